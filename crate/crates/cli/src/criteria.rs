//! The acceptance suite: eight checks, each with its own time limit.

use std::time::{Duration, Instant};

use asm_dpp::{asm_formula, asm_to_dpp, enumerate_asm, enumerate_asm_i, enumerate_dpp, enumerate_dpp_i, main_bijection};
use linalg::{cramer, det_product, Matrix};
use patterns::{mt, mt_element, mt_sign, sgt, Impl};
use rotation::{e_zero, f_zero, prep_elementary, prep_elementary_f, rot, rotate_mt_with};
use serde::Serialize;
use sijection::{matching, Sign, SignedSet, Sijection};
use subsets::{alpha, b_recurrence, chu_vandermonde};

use crate::{Budget, CliError};

/// All `k` of length `n` with entries in `[lo, hi]`.
pub fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (lo..=hi).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn rows_up_to_three() -> Vec<Vec<i64>> {
    (1..=3).flat_map(|n| grid(n, 0, 3)).collect()
}

pub fn alpha_grid() -> Vec<Sijection> {
    let r = -3..=3;
    r.clone().flat_map(|a| r.clone().flat_map(move |b| (-3..=3).map(move |c| alpha(a, b, c)))).collect()
}

pub fn cv_grid() -> Vec<Result<Sijection, CliError>> {
    let mut out = Vec::new();
    for a in 1..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                out.push(chu_vandermonde(a, b, c).map_err(CliError::from));
            }
        }
    }
    out
}

pub fn brec_grid() -> Vec<Result<Sijection, CliError>> {
    (1..=3).flat_map(|n| (1..=n).map(move |i| b_recurrence(n, i).map_err(CliError::from))).collect()
}

// small deterministic pseudo-random interval endpoints in [0, 3]
fn toy_entries(m: usize, seed: u64) -> Vec<(i64, i64)> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    (0..m * m)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (((state >> 33) % 4) as i64, ((state >> 45) % 4) as i64)
        })
        .collect()
}

fn toy_matrix(m: usize, seed: u64) -> Matrix {
    let e = toy_entries(m, seed);
    Matrix::from_fn(m, |i, j| {
        let (a, b) = e[i * m + j];
        SignedSet::interval(a, b)
    })
}

// rows ⨆_q P_{i,q} × X_q ⇒ Y_i, with Y_i an interval of the right size
fn toy_system(p: &Matrix, xs: &[SignedSet]) -> Result<(Vec<SignedSet>, Vec<Sijection>), CliError> {
    let m = p.dim();
    let mut ys = Vec::new();
    let mut rows = Vec::new();
    for i in 0..m {
        let dom = SignedSet::union_all((0..m).map(|q| SignedSet::product(p.get(i, q).clone(), xs[q].clone())).collect());
        let y = SignedSet::interval(1, dom.size());
        rows.push(matching(dom, y.clone(), format!("toy row {i}"))?);
        ys.push(y);
    }
    Ok((ys, rows))
}

/// det_product on pairs of toy matrices and Cramer's rule on toy systems,
/// for sizes 1 to 3.
pub fn det_toys() -> Vec<Result<Sijection, CliError>> {
    let mut out = Vec::new();
    for m in 1..=3usize {
        for seed in 0..4u64 {
            let p = toy_matrix(m, seed);
            let q = toy_matrix(m, seed + 100);
            out.push(det_product(&p, &q).map_err(CliError::from));
            let xs: Vec<SignedSet> = toy_entries(m, seed + 200)[..m].iter().map(|&(a, b)| SignedSet::interval(a, b)).collect();
            match toy_system(&p, &xs) {
                Ok((ys, rows)) => match cramer(&p, &xs, &ys, &rows) {
                    Ok(sols) => out.extend(sols.into_iter().map(Ok)),
                    Err(e) => out.push(Err(e.into())),
                },
                Err(e) => out.push(Err(e)),
            }
        }
    }
    out
}

pub fn elementary_grid() -> Vec<Result<Sijection, CliError>> {
    let mut out = Vec::new();
    for k in rows_up_to_three() {
        let n = k.len() as i64;
        for j in 0..=n + 1 {
            out.push(Ok(prep_elementary(&k, j)));
            out.push(Ok(prep_elementary_f(&k, j)));
            if j >= 1 {
                out.push(e_zero(&k, j).map_err(CliError::from));
                out.push(f_zero(&k, j).map_err(CliError::from));
            }
        }
    }
    out
}

pub fn rotate_grid(x: i64, imp: Impl) -> Vec<Result<Sijection, CliError>> {
    rows_up_to_three().iter().map(|k| rotate_mt_with(k, x, imp).map_err(CliError::from)).collect()
}

/// One line of the suite.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub id: usize,
    pub title: &'static str,
    pub ok: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = if self.ok { "PASS" } else { "FAIL" };
        write!(f, "criterion {} {}: {} ({:.1}s) {}", self.id, self.title, mark, self.seconds, self.detail)
    }
}

type Check = fn(&Budget) -> Result<String, String>;

pub const CRITERIA: [(&str, u64, Check); 8] = [
    ("ASM counts", 60, counts),
    ("refined counts", 60, refined),
    ("first bijection n=3", 300, main_three),
    ("second bijection n=4", 600, asm_dpp_four),
    ("sijection grid", 600, sijection_grid),
    ("rotation size law", 600, rotation_law),
    ("MT and SGT sizes", 600, gamma_contract),
    ("MT sign", 60, mt_sign_oracle),
];

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn in_time(budget: &Budget) -> Result<(), String> {
    budget.check().map_err(|e| e.to_string())
}

fn counts(_: &Budget) -> Result<String, String> {
    let brute: Vec<usize> = (1..=4).map(|n| enumerate_asm(n).len()).collect();
    expect("brute force", brute, vec![1, 2, 7, 42])?;
    let formula: Vec<u128> = (1..=5).map(asm_formula).collect();
    expect("formula", formula, vec![1, 2, 7, 42, 429])?;
    Ok("1 2 7 42 by enumeration and formula, 429 by formula".into())
}

fn refined(_: &Budget) -> Result<String, String> {
    for n in 1..=4 {
        for i in 1..=n {
            expect(&format!("ASM_{n},{i} vs DPP_{n},{i}"), enumerate_asm_i(n, i).len(), enumerate_dpp_i(n, i).len())?;
        }
    }
    Ok("|ASM_n,i| = |DPP_n,i| for n <= 4".into())
}

fn main_three(budget: &Budget) -> Result<String, String> {
    let mut sizes = Vec::new();
    for i in 1..=3 {
        for x in 0..=1 {
            in_time(budget)?;
            let b = main_bijection(3, i, x).map_err(|e| e.to_string())?;
            let pairs = b.check().map_err(|e| format!("i = {i}, x = {x}: {e}"))?;
            let want = enumerate_dpp(2).len() * 6 * enumerate_asm_i(3, i).len();
            expect(&format!("pairs at i = {i}"), pairs, want)?;
            if x == 0 {
                sizes.push(pairs.to_string());
            }
        }
    }
    Ok(format!("total and injective, {} pairs", sizes.join("/")))
}

fn asm_dpp_four(budget: &Budget) -> Result<String, String> {
    let mut sizes = Vec::new();
    for i in 1..=4 {
        for x in 0..=1 {
            in_time(budget)?;
            let b = asm_to_dpp(4, i, x).map_err(|e| e.to_string())?;
            let pairs = b.check().map_err(|e| format!("i = {i}, x = {x}: {e}"))?;
            expect(&format!("pairs at i = {i}"), pairs, 7 * enumerate_asm_i(4, i).len())?;
            if x == 0 {
                sizes.push(pairs.to_string());
            }
        }
    }
    Ok(format!("total and injective, {} pairs", sizes.join("/")))
}

fn sijection_grid(budget: &Budget) -> Result<String, String> {
    let groups: Vec<(&str, Vec<Result<Sijection, CliError>>)> = vec![
        ("alpha", alpha_grid().into_iter().map(Ok).collect()),
        ("chu_vandermonde", cv_grid()),
        ("b_recurrence", brec_grid()),
        ("det toys", det_toys()),
        ("elementary", elementary_grid()),
        ("rotate_mt", rotate_grid(0, Impl::Fallback)),
    ];
    let mut total = 0;
    for (name, sijs) in groups {
        for s in sijs {
            in_time(budget)?;
            let r = s.map_err(|e| format!("{name}: {e}"))?.verify();
            if !r.ok {
                return Err(format!("{name}: {} fails at {:?}", r.name, r.counterexample));
            }
            total += 1;
        }
    }
    Ok(format!("{total} sijections verified"))
}

fn rotation_law(_: &Budget) -> Result<String, String> {
    let ks = rows_up_to_three();
    for k in &ks {
        let sign = if k.len() % 2 == 1 { 1 } else { -1 };
        expect(&format!("size of MT{k:?}"), mt(k).size(), sign * mt(&rot(k)).size())?;
    }
    Ok(format!("{} bottom rows", ks.len()))
}

fn gamma_contract(_: &Budget) -> Result<String, String> {
    let ks = rows_up_to_three();
    for k in &ks {
        expect(&format!("MT vs SGT at {k:?}"), mt(k).size(), sgt(k).size())?;
    }
    Ok(format!("{} bottom rows", ks.len()))
}

fn mt_sign_oracle(_: &Budget) -> Result<String, String> {
    let t = vec![vec![4], vec![3, 5], vec![3, 4, 5], vec![3, 3, 4, 5], vec![5, 3, 1, 4, 6]];
    expect("sign", mt_sign(&t), Sign::Minus)?;
    expect("sign in MT(k)", mt(&t[4]).sign_of(&mt_element(&t)), Some(Sign::Minus))?;
    Ok("sign -1".into())
}

/// Runs the criteria in order under one budget; a criterion also fails if
/// it overruns its own limit.
pub fn run(budget: &Budget, mut report: impl FnMut(&Verdict)) -> Vec<Verdict> {
    let mut out = Vec::new();
    for (idx, (title, limit, check)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let res = match budget.check() {
            Ok(()) => std::panic::catch_unwind(|| check(budget)).unwrap_or_else(|_| Err("panicked".into())),
            Err(e) => Err(e.to_string()),
        };
        let took = start.elapsed();
        let (ok, detail) = match res {
            Ok(d) if took <= Duration::from_secs(*limit) => (true, d),
            Ok(d) => (false, format!("{d}, but over the {limit}s limit")),
            Err(e) => (false, e),
        };
        let v = Verdict { id: idx + 1, title, ok, detail, seconds: took.as_secs_f64() };
        report(&v);
        out.push(v);
    }
    out
}
