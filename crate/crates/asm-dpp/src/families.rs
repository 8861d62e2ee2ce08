use std::fmt;

use sijection::{Element, Sign, SignedSet};

/// An `n × n` alternating sign matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Asm {
    pub rows: Vec<Vec<i64>>,
}

impl Asm {
    pub fn new(rows: Vec<Vec<i64>>) -> Option<Asm> {
        let a = Asm { rows };
        a.is_valid().then_some(a)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn is_valid(&self) -> bool {
        let n = self.n();
        let alternating = |line: &mut dyn Iterator<Item = i64>| {
            let mut sum = 0;
            for x in line {
                if !(-1..=1).contains(&x) {
                    return false;
                }
                sum += x;
                if !(0..=1).contains(&sum) {
                    return false;
                }
            }
            sum == 1
        };
        self.rows.iter().all(|r| r.len() == n)
            && self.rows.iter().all(|r| alternating(&mut r.iter().copied()))
            && (0..n).all(|c| alternating(&mut self.rows.iter().map(|r| r[c])))
    }

    /// Column (1-based) of the 1 in the first row.
    pub fn top_one(&self) -> usize {
        self.rows[0].iter().position(|&x| x == 1).expect("first row has a 1") + 1
    }

    pub fn element(&self) -> Element {
        Element::int(self.rows.concat())
    }

    pub fn from_element(e: &Element) -> Asm {
        let flat = e.ints();
        let n = (flat.len() as f64).sqrt().round() as usize;
        Asm { rows: flat.chunks(n.max(1)).map(|c| c.to_vec()).collect() }
    }

    pub fn identity(n: usize) -> Asm {
        Asm { rows: (0..n).map(|r| (0..n).map(|c| (r == c) as i64).collect()).collect() }
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// All ASMs of size `n`, built row by row keeping the column partial sums
/// in `{0, 1}`.  Sorted lexicographically by rows.
pub fn enumerate_asm(n: usize) -> Vec<Asm> {
    fn rows_for(sums: &[i64]) -> Vec<Vec<i64>> {
        // rows whose nonzero entries alternate +,-,…,+ and respect the sums
        let n = sums.len();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(sums: &[i64], partial: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            let c = cur.len();
            if c == sums.len() {
                if partial == 1 {
                    out.push(cur.clone());
                }
                return;
            }
            for x in [-1, 0, 1] {
                let p = partial + x;
                let s = sums[c] + x;
                if (0..=1).contains(&p) && (0..=1).contains(&s) {
                    cur.push(x);
                    rec(sums, p, cur, out);
                    cur.pop();
                }
            }
        }
        rec(sums, 0, &mut cur, &mut out);
        out
    }
    fn rec(n: usize, sums: &mut Vec<i64>, acc: &mut Vec<Vec<i64>>, out: &mut Vec<Asm>) {
        if acc.len() == n {
            if sums.iter().all(|&s| s == 1) {
                out.push(Asm { rows: acc.clone() });
            }
            return;
        }
        for row in rows_for(sums) {
            for (s, x) in sums.iter_mut().zip(&row) {
                *s += x;
            }
            acc.push(row);
            rec(n, sums, acc, out);
            let row = acc.pop().unwrap();
            for (s, x) in sums.iter_mut().zip(&row) {
                *s -= x;
            }
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, &mut vec![0; n], &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `ASM_{n,i}`: the 1 in the first row sits in column `i`.
pub fn enumerate_asm_i(n: usize, i: usize) -> Vec<Asm> {
    enumerate_asm(n).into_iter().filter(|a| a.top_one() == i).collect()
}

/// `ASM_{n,i}` as an all-positive signed set; empty when `i ∉ [n]`.
pub fn asm_set(n: usize, i: i64) -> SignedSet {
    let list = if i >= 1 && i as usize <= n {
        enumerate_asm_i(n, i as usize).into_iter().map(|a| (a.rows.concat(), Sign::Plus)).collect()
    } else {
        Vec::new()
    };
    SignedSet::atoms(format!("ASM({n},{i})"), list)
}

/// Reflection along the vertical axis: `ASM_{n,i} → ASM_{n,n+1-i}`.
pub fn asm_reflect(a: &Asm) -> Asm {
    Asm { rows: a.rows.iter().map(|r| r.iter().rev().copied().collect()).collect() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Turn {
    Clockwise,
    Counterclockwise,
}

pub fn asm_rotate90(a: &Asm, turn: Turn) -> Asm {
    let n = a.n();
    let rows = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| match turn {
                    Turn::Counterclockwise => a.rows[c][n - 1 - r],
                    Turn::Clockwise => a.rows[n - 1 - c][r],
                })
                .collect()
        })
        .collect();
    Asm { rows }
}

/// A descending plane partition, rows in shifted layout (row `r` starts in
/// column `r`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dpp {
    pub rows: Vec<Vec<i64>>,
}

impl Dpp {
    pub fn is_valid(&self) -> bool {
        let mut prev: Option<&Vec<i64>> = None;
        for row in &self.rows {
            let len = row.len() as i64;
            if row.is_empty() || row[0] <= len || row.windows(2).any(|w| w[0] < w[1]) || row.iter().any(|&x| x < 1) {
                return false;
            }
            if let Some(up) = prev {
                if row[0] > up.len() as i64 || row.len() + 1 > up.len() {
                    return false;
                }
                if row.iter().enumerate().any(|(t, &x)| x >= up[t + 1]) {
                    return false;
                }
            }
            prev = Some(row);
        }
        true
    }

    pub fn max_part(&self) -> i64 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn count(&self, v: i64) -> usize {
        self.rows.iter().flatten().filter(|&&x| x == v).count()
    }

    /// Each row as its length followed by its parts.
    pub fn element(&self) -> Element {
        Element::int(self.rows.iter().flat_map(|r| std::iter::once(r.len() as i64).chain(r.iter().copied())).collect::<Vec<_>>())
    }

    pub fn from_element(e: &Element) -> Dpp {
        let flat = e.ints();
        let mut rows = Vec::new();
        let mut at = 0;
        while at < flat.len() {
            let len = flat[at] as usize;
            rows.push(flat[at + 1..at + 1 + len].to_vec());
            at += len + 1;
        }
        Dpp { rows }
    }
}

impl fmt::Display for Dpp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return f.write_str("∅");
        }
        let rows: Vec<String> =
            self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        f.write_str(&rows.join(" / "))
    }
}

/// All DPPs with parts at most `n`, sorted.
pub fn enumerate_dpp(n: usize) -> Vec<Dpp> {
    let n = n as i64;
    // weakly decreasing rows of the given length below `cap` entrywise
    fn tails(len: usize, first: i64, caps: &dyn Fn(usize) -> i64, out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let t = cur.len();
        let hi = if t == 0 { first } else { cur[t - 1].min(caps(t)) };
        let lo = if t == 0 { first } else { 1 };
        for v in (lo..=hi).rev() {
            cur.push(v);
            tails(len, first, caps, out, cur);
            cur.pop();
        }
    }
    fn rec(n: i64, rows: &mut Vec<Vec<i64>>, out: &mut Vec<Dpp>) {
        out.push(Dpp { rows: rows.clone() });
        let (max_len, max_first) = match rows.last() {
            None => (n as usize, n),
            Some(up) => (up.len().saturating_sub(1), up.len() as i64),
        };
        for len in 1..=max_len {
            for first in (len as i64 + 1)..=max_first.min(n) {
                let up = rows.last().cloned();
                let caps = |t: usize| match &up {
                    None => n,
                    Some(u) => u[t + 1] - 1,
                };
                if caps(0) < first {
                    continue;
                }
                let mut found = Vec::new();
                tails(len, first, &caps, &mut found, &mut Vec::new());
                for row in found {
                    rows.push(row);
                    rec(n, rows, out);
                    rows.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `DPP_{n,i}`: `i-1` occurrences of `n`.
pub fn enumerate_dpp_i(n: usize, i: usize) -> Vec<Dpp> {
    enumerate_dpp(n).into_iter().filter(|d| d.count(n as i64) + 1 == i).collect()
}

/// `DPP_n` as an all-positive signed set.
pub fn dpp_set(n: usize) -> SignedSet {
    SignedSet::atoms(format!("DPP({n})"), enumerate_dpp(n).into_iter().map(|d| (d.element().ints().to_vec(), Sign::Plus)).collect())
}

pub fn dpp_i_set(n: usize, i: usize) -> SignedSet {
    SignedSet::atoms(
        format!("DPP({n},{i})"),
        enumerate_dpp_i(n, i).into_iter().map(|d| (d.element().ints().to_vec(), Sign::Plus)).collect(),
    )
}

fn primes_upto(m: u64) -> Vec<u64> {
    (2..=m).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
}

// exponent of p in m!
fn legendre(m: u64, p: u64) -> i64 {
    let (mut e, mut q) = (0, p);
    while q <= m {
        e += (m / q) as i64;
        q *= p;
    }
    e
}

/// `∏_{j=0}^{n-1} (3j+1)!/(n+j)!`, exact.
pub fn asm_formula(n: u64) -> u128 {
    if n == 0 {
        return 1;
    }
    let mut out: u128 = 1;
    for p in primes_upto(3 * n) {
        let e: i64 = (0..n).map(|j| legendre(3 * j + 1, p) - legendre(n + j, p)).sum();
        assert!(e >= 0, "the product is an integer");
        out *= (p as u128).pow(e as u32);
    }
    out
}

fn choose(m: u64, k: u64) -> u128 {
    if k > m {
        return 0;
    }
    (0..k).fold(1u128, |acc, t| acc * (m - t) as u128 / (t + 1) as u128)
}

/// `|ASM_{n,i}| = C(n+i-2,n-1) C(2n-i-1,n-1) / C(3n-2,2n-1) · |ASM_n|`.
pub fn asm_refined_formula(n: u64, i: u64) -> u128 {
    if n == 0 || i == 0 || i > n {
        return 0;
    }
    let b = choose(n + i - 2, n - 1) * choose(2 * n - i - 1, n - 1);
    asm_formula(n) * b / choose(3 * n - 2, 2 * n - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encodings_round_trip() {
        for a in enumerate_asm(3) {
            assert_eq!(Asm::from_element(&a.element()), a);
        }
        for d in enumerate_dpp(3) {
            assert_eq!(Dpp::from_element(&d.element()), d);
        }
    }
}
