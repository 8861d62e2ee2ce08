use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use sijection::{Element, SignedSet, Sijection};

fn cache() -> &'static Mutex<HashMap<Vec<i64>, SignedSet>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<i64>, SignedSet>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `GT(k)`: the positive singleton for `n <= 1`, and otherwise
/// `⨆_{l ∈ [k_1,k_2] × ⋯ × [k_{n-1},k_n]} GT(l)`.
///
/// A member is `At(l, member of GT(l))` with `l` a right-nested tuple of
/// one-entry `Int`s, so its projection is the list of rows from the row
/// above the bottom upwards.  Sets are shared between calls.
pub fn gt(k: &[i64]) -> SignedSet {
    if let Some(s) = cache().lock().unwrap().get(k) {
        return s.clone();
    }
    let s = if k.len() <= 1 {
        SignedSet::unit()
    } else {
        let index = SignedSet::product_all(k.windows(2).map(|w| SignedSet::interval(w[0], w[1])).collect());
        SignedSet::indexed(index, format!("GT{k:?}"), |t| gt(&t.flatten()))
    };
    cache().lock().unwrap().entry(k.to_vec()).or_insert(s).clone()
}

/// Rows of a GT member from the top row `(l_1)` down to the row just above
/// the bottom row.
pub fn gt_rows(e: &Element) -> Vec<Vec<i64>> {
    let mut rows = Vec::new();
    let mut cur = e;
    while let Some((t, rest)) = cur.as_at() {
        rows.push(t.flatten());
        cur = rest;
    }
    rows.reverse();
    rows
}

/// Inverse of [`gt_rows`].
pub fn gt_element(rows: &[Vec<i64>]) -> Element {
    rows.iter().fold(Element::unit(), |acc, row| {
        Element::at(Element::tuple(row.iter().map(|&x| Element::int(vec![x])).collect()), acc)
    })
}

/// `GT(k) ⇒ GT(k + δ)`, adding `δ` to every entry.
pub fn gt_shift(k: &[i64], delta: i64) -> Sijection {
    let shifted: Vec<i64> = k.iter().map(|x| x + delta).collect();
    let by = move |d: i64| {
        move |e: &Element| {
            let rows: Vec<Vec<i64>> = gt_rows(e).into_iter().map(|r| r.into_iter().map(|x| x + d).collect()).collect();
            gt_element(&rows)
        }
    };
    Sijection::relabel(gt(k), gt(&shifted), format!("shift{k:?} by {delta}"), by(delta), by(-delta))
}
