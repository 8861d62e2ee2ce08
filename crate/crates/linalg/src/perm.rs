use itertools::Itertools;
use sijection::{Sign, SignedSet};

/// Permutations of `[m]` as one-line tuples `(π(1), …, π(m))`, in
/// lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<i64>> {
    (1..=m as i64).permutations(m).collect()
}

/// Sign by inversion count.
pub fn perm_sign(p: &[i64]) -> Sign {
    let inversions = p.iter().tuple_combinations().filter(|(a, b)| a > b).count();
    Sign::parity(inversions as i64)
}

/// `𝔖_m` with the usual sign.
pub fn symmetric_group(m: usize) -> SignedSet {
    SignedSet::atoms(
        format!("S_{m}"),
        permutations(m).into_iter().map(|p| {
            let s = perm_sign(&p);
            (p, s)
        }).collect(),
    )
}

/// `(p ∘ q)(i) = p(q(i))`.
pub fn compose_perm(p: &[i64], q: &[i64]) -> Vec<i64> {
    q.iter().map(|&x| p[x as usize - 1]).collect()
}

pub fn invert_perm(p: &[i64]) -> Vec<i64> {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize - 1] = i as i64 + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups() {
        assert_eq!(permutations(0), vec![Vec::<i64>::new()]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![1, 3, 2]);
        assert_eq!(symmetric_group(3).size(), 0);
        assert_eq!(symmetric_group(1).size(), 1);
        assert_eq!(perm_sign(&[2, 1, 3]), Sign::Minus);
        assert_eq!(perm_sign(&[2, 3, 1]), Sign::Plus);
        let p = vec![2, 3, 1];
        assert_eq!(compose_perm(&p, &invert_perm(&p)), vec![1, 2, 3]);
    }
}
