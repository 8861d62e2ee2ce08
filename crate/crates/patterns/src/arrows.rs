use itertools::Itertools;
use sijection::{Sign, SignedSet};

use crate::gt::gt;

/// Entries of arrow patterns: `↙`, `↘`, `↙↘`.
pub const SW: i64 = 0;
pub const SE: i64 = 1;
/// Entries of arrow rows: `↖`, `↗`, `↖↗`.  Reflecting an arrow row along
/// the horizontal axis keeps the code.
pub const NW: i64 = 0;
pub const NE: i64 = 1;
pub const BOTH: i64 = 2;

/// Position of `t_{p,q}` (`1 <= p < q <= n`) in the encoding of an arrow
/// pattern: pairs in lexicographic order.
pub fn pattern_index(n: usize, p: usize, q: usize) -> usize {
    debug_assert!(1 <= p && p < q && q <= n);
    // pairs (p', q') with p' < p come first
    let before: usize = (1..p).map(|r| n - r).sum();
    before + (q - p - 1)
}

/// An arrow pattern of order `n`, stored as its entries `t_{p,q}` in
/// lexicographic order of `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ArrowPattern {
    pub n: usize,
    pub t: Vec<i64>,
}

impl ArrowPattern {
    pub fn new(n: usize, t: Vec<i64>) -> ArrowPattern {
        assert_eq!(t.len(), n * n.saturating_sub(1) / 2);
        ArrowPattern { n, t }
    }

    pub fn get(&self, p: usize, q: usize) -> i64 {
        self.t[pattern_index(self.n, p, q)]
    }

    /// `c_i(T) = #{j > i : t_{i,j} ∈ {↙, ↙↘}} - #{j < i : t_{j,i} ∈ {↘, ↙↘}}`.
    pub fn c(&self) -> Vec<i64> {
        let n = self.n;
        (1..=n)
            .map(|i| {
                let left = (i + 1..=n).filter(|&j| self.get(i, j) != SE).count() as i64;
                let right = (1..i).filter(|&j| self.get(j, i) != SW).count() as i64;
                left - right
            })
            .collect()
    }
}

pub fn arrow_pattern_sign(t: &[i64]) -> Sign {
    Sign::parity(t.iter().filter(|&&x| x == BOTH).count() as i64)
}

fn words(len: usize) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    (0..len).map(|_| 0..3i64).multi_cartesian_product().collect()
}

fn signed_words(tag: String, len: usize) -> SignedSet {
    SignedSet::atoms(
        tag,
        words(len).into_iter().map(|w| {
            let s = arrow_pattern_sign(&w);
            (w, s)
        }).collect(),
    )
}

/// `AP_n`; members are the encodings of [`ArrowPattern`].
pub fn ap(n: usize) -> SignedSet {
    signed_words(format!("AP_{n}"), n * n.saturating_sub(1) / 2)
}

/// `AR_n`, arrow rows of length `n`.
pub fn ar(n: usize) -> SignedSet {
    signed_words(format!("AR_{n}"), n)
}

pub fn c_vector(n: usize, t: &[i64]) -> Vec<i64> {
    ArrowPattern::new(n, t.to_vec()).c()
}

/// `d(k, T) = k + c(T)`.
pub fn deform(k: &[i64], t: &[i64]) -> Vec<i64> {
    k.iter().zip(c_vector(k.len(), t)).map(|(a, b)| a + b).collect()
}

/// `μT'`: `μ` (order `n-1`) becomes the leftmost `↗`-diagonal `t_{1,2}, …,
/// t_{1,n}` read from the bottom, and `T'` fills `t_{p,q}`, `p >= 2`.
pub fn mu_t(mu: &[i64], t_prime: &[i64]) -> Vec<i64> {
    let n = mu.len() + 1;
    let inner = ArrowPattern::new(n - 1, t_prime.to_vec());
    let mut out = vec![0; n * (n - 1) / 2];
    for q in 2..=n {
        out[pattern_index(n, 1, q)] = mu[q - 2];
    }
    for p in 2..=n {
        for q in p + 1..=n {
            out[pattern_index(n, p, q)] = inner.get(p - 1, q - 1);
        }
    }
    out
}

/// `T'μ`: `μ` becomes the rightmost `↘`-diagonal `t_{1,n}, …, t_{n-1,n}`
/// read from the top, and `T'` fills `t_{p,q}`, `q <= n-1`.
pub fn t_mu(t_prime: &[i64], mu: &[i64]) -> Vec<i64> {
    let n = mu.len() + 1;
    let inner = ArrowPattern::new(n - 1, t_prime.to_vec());
    let mut out = vec![0; n * (n - 1) / 2];
    for p in 1..n {
        out[pattern_index(n, p, n)] = mu[p - 1];
    }
    for p in 1..n {
        for q in p + 1..n {
            out[pattern_index(n, p, q)] = inner.get(p, q);
        }
    }
    out
}

/// `SGT(k) = ⨆_{T ∈ AP_n} GT(d(k, T))`.
pub fn sgt(k: &[i64]) -> SignedSet {
    let k = k.to_vec();
    SignedSet::indexed(ap(k.len()), format!("SGT{k:?}"), move |t| gt(&deform(&k, t.ints())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_cover_pairs() {
        let n = 5;
        let mut seen = Vec::new();
        for p in 1..=n {
            for q in p + 1..=n {
                seen.push(pattern_index(n, p, q));
            }
        }
        assert_eq!(seen, (0..10).collect::<Vec<_>>());
    }
}
