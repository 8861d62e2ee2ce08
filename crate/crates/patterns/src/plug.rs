use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use sijection::{matching, Error, Sijection};

use crate::{gt, mt, sgt};

/// Which construction backs `π` and `Γ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Impl {
    /// Enumerate both sides, cancel within each side, match the rest in
    /// canonical order.
    #[default]
    Fallback,
    /// The original recursive constructions.  Not bundled.
    PartI,
}

impl FromStr for Impl {
    type Err = Error;

    fn from_str(s: &str) -> Result<Impl, Error> {
        match s {
            "fallback" => Ok(Impl::Fallback),
            "parti" => Ok(Impl::PartI),
            _ => Err(Error::InvalidParameter(format!("unknown implementation {s:?}"))),
        }
    }
}

fn unavailable() -> Error {
    Error::InvalidParameter("the recursive constructions of π and Γ are not bundled; use the fallback".into())
}

type Cache<K> = OnceLock<Mutex<HashMap<K, Sijection>>>;

fn cached<K: std::hash::Hash + Eq + Clone>(
    cache: &'static Cache<K>,
    key: K,
    build: impl FnOnce() -> Result<Sijection, Error>,
) -> Result<Sijection, Error> {
    let map = cache.get_or_init(Default::default);
    if let Some(s) = map.lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let s = build()?;
    Ok(map.lock().unwrap().entry(key).or_insert(s).clone())
}

/// `(k_1, …, k_{i-1}, k_{i+1}+1, k_i-1, k_{i+2}, …, k_n)`, `i` 1-based.
pub fn pi_target(k: &[i64], i: usize) -> Vec<i64> {
    let mut out = k.to_vec();
    out[i - 1] = k[i] + 1;
    out[i] = k[i - 1] - 1;
    out
}

/// `π_{k,i} : GT(k) ⇒ -GT(pi_target(k, i))` for `1 <= i <= n-1`.
pub fn pi_sij(k: &[i64], i: usize, imp: Impl) -> Result<Sijection, Error> {
    if i == 0 || i >= k.len() {
        return Err(Error::InvalidParameter(format!("π needs 1 <= i < n, got i = {i} for {k:?}")));
    }
    if imp == Impl::PartI {
        return Err(unavailable());
    }
    static CACHE: Cache<(Vec<i64>, usize)> = OnceLock::new();
    cached(&CACHE, (k.to_vec(), i), || {
        let target = pi_target(k, i);
        matching(gt(k), gt(&target).neg(), format!("π({k:?},{i})"))
    })
}

/// `Γ_{k,x} : MT(k) ⇒ SGT(k)`.  The fallback ignores `x`.
pub fn gamma(k: &[i64], x: i64, imp: Impl) -> Result<Sijection, Error> {
    if imp == Impl::PartI {
        return Err(unavailable());
    }
    static CACHE: Cache<Vec<i64>> = OnceLock::new();
    let s = cached(&CACHE, k.to_vec(), || matching(mt(k), sgt(k), format!("Γ({k:?})")))?;
    Ok(s.named(format!("Γ({k:?},{x})")))
}

