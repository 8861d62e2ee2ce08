use patterns::{mt, sgt};
use proptest::prelude::*;
use rotation::*;
use sijection::{Side, Sijection};

// GT patterns with bottom row k, counted with signs directly from the
// recursive definition.
fn gt_count(k: &[i64]) -> i64 {
    if k.len() <= 1 {
        return 1;
    }
    let ranges: Vec<(i64, i64, i64)> = k
        .windows(2)
        .map(|w| if w[0] <= w[1] { (w[0], w[1], 1) } else { (w[1] + 1, w[0] - 1, -1) })
        .collect();
    let mut total = 0;
    let mut row = vec![0; ranges.len()];
    fn rec(i: usize, ranges: &[(i64, i64, i64)], row: &mut Vec<i64>, sign: i64, total: &mut i64) {
        if i == ranges.len() {
            *total += sign * gt_count(row);
            return;
        }
        let (lo, hi, s) = ranges[i];
        for x in lo..=hi {
            row[i] = x;
            rec(i + 1, ranges, row, sign * s, total);
        }
    }
    rec(0, &ranges, &mut row, 1, &mut total);
    total
}

fn vu_sum(k: &[i64], j: usize, s: i64, first: usize) -> i64 {
    let n = k.len();
    let mut total = 0;
    for v in 0u32..1 << n {
        if v.count_ones() as usize != j || (0..first - 1).any(|i| v >> i & 1 == 1) {
            continue;
        }
        for u in 0u32..1 << n {
            if u & !v != 0 {
                continue;
            }
            let l: Vec<i64> = (0..n).map(|i| k[i] + s * (u >> i & 1) as i64).collect();
            total += if u.count_ones() % 2 == 0 { 1 } else { -1 } * gt_count(&l);
        }
    }
    total
}

fn binomial(m: i64, k: i64) -> i64 {
    if k < 0 || k > m {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (lo..=hi).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn assert_ok(s: &Sijection) {
    let r = s.verify();
    assert!(r.ok, "{}: {:?}", r.name, r.counterexample);
}

fn assert_normal(s: &Sijection) {
    for side in [Side::Dom, Side::Cod] {
        for (e, _) in s.set(side).iter() {
            let (_, f) = s.apply(side, &e);
            assert_eq!(e.flatten(), f.flatten(), "{} moves {e:?}", s.name());
        }
    }
}

#[test]
fn prep_with_j_zero_is_the_identity() {
    let p = prep_elementary(&[1, 3], 0);
    assert_eq!(p.dom().size(), 3);
    for (e, _) in p.dom().iter() {
        let (side, f) = p.apply(Side::Dom, &e);
        assert_eq!(side, Side::Cod);
        assert_eq!(e.flatten(), f.flatten());
        assert_eq!(e.at_parts().1, f.at_parts().1);
    }
}

#[test]
fn prep_beyond_n_is_empty() {
    let p = prep_elementary(&[0, 2], 3);
    assert_eq!(p.dom().counts().total(), 0);
    assert_eq!(p.cod().counts().total(), 0);
}

#[test]
fn prep_example_is_normal() {
    for p in [prep_elementary(&[1, 2, 3], 1), prep_elementary_f(&[1, 2, 3], 1)] {
        assert_ok(&p);
        assert_normal(&p);
    }
}

#[test]
fn prep_grid() {
    for n in 1..=3 {
        for k in grid(n, 0, 3) {
            for j in 0..=n as i64 + 1 {
                for p in [prep_elementary(&k, j), prep_elementary_f(&k, j)] {
                    assert_ok(&p);
                    assert_normal(&p);
                }
            }
        }
    }
}

#[test]
fn zero_beyond_n() {
    let z = e_zero(&[0, 1], 3).unwrap();
    assert_eq!(z.dom().counts().total(), 0);
    assert!(e_zero(&[0, 1], 0).is_err());
}

#[test]
fn zero_examples() {
    for k in [vec![0, 1], vec![1, 2, 3]] {
        for z in [e_zero(&k, 1).unwrap(), f_zero(&k, 1).unwrap()] {
            assert!(z.dom().counts().total() > 0);
            assert_ok(&z);
        }
    }
}

#[test]
fn elementary_sums_vanish() {
    for n in 1..=3 {
        for k in grid(n, 0, 3) {
            for j in 1..=n {
                assert_eq!(vu_sum(&k, j, 1, 1), 0, "E_{j}({k:?})");
                assert_eq!(vu_sum(&k, j, -1, 1), 0, "F_{j}({k:?})");
                assert_eq!(e_set(&k, j as i64).size(), 0);
                assert_eq!(f_set(&k, j as i64).size(), 0);
            }
        }
    }
}

#[test]
fn zero_grid() {
    for n in 1..=3 {
        for k in grid(n, 0, 3) {
            for j in 1..=n as i64 + 1 {
                assert_ok(&e_zero(&k, j).unwrap());
                assert_ok(&f_zero(&k, j).unwrap());
            }
        }
    }
}

#[test]
fn prime_with_j_zero() {
    let p = e_prime(&[0, 2], 0).unwrap();
    assert_eq!(p.dom().size(), 3);
    assert_eq!(p.cod().size(), 3);
    assert_ok(&p);
}

#[test]
fn prime_examples() {
    assert_ok(&e_prime(&[0, 1], 1).unwrap());
    assert_ok(&f_prime(&[0, 1], 1).unwrap());
    let k = [1, 2, 3];
    let target: i64 = (0..=2).map(|i| (-1i64).pow(2 - i as u32) * binomial(2, i) * gt_count(&[1 + i, 2, 3])).sum();
    assert_eq!(e_prime_set(&k, 2).size(), vu_sum(&k, 2, 1, 2));
    assert_eq!(e_prime_set(&k, 2).size(), target);
    assert_eq!(e_prime_target(&k, 2).size(), target);
    let p = e_prime(&k, 2).unwrap();
    assert_eq!(p.dom().size(), p.cod().size());
    assert_ok(&p);
    assert_eq!(f_prime_target(&k, 2).size(), f_prime_set(&k, 2).size());
}

#[test]
fn prime_grid() {
    for n in 1..=3 {
        for k in grid(n, 0, 3) {
            for j in 0..=n as i64 {
                assert_ok(&e_prime(&k, j).unwrap());
                assert_ok(&f_prime(&k, j).unwrap());
            }
        }
    }
}

#[test]
fn left_to_right_small() {
    assert_ok(&left_to_right(&[4], &[]).unwrap());
    for k in [vec![0, 1], vec![2, 0]] {
        assert_ok(&left_to_right(&k, &[]).unwrap());
    }
    for t in 0..3 {
        let s = left_to_right(&[1, 2, 3], &[t]).unwrap();
        assert_eq!(s.dom().size(), ltr_right(&[1, 2, 3], &[t]).size());
        assert_ok(&s);
    }
    assert!(left_to_right(&[1, 2, 3], &[]).is_err());
}

#[test]
fn rot_examples() {
    assert_eq!(rot(&[1, 2, 3]), vec![2, 3, -2]);
    assert_eq!(mt(&[1, 2, 3]).size(), 7);
    assert_eq!(mt(&[2, 3, -2]).size(), 7);
    let s = rotate_mt(&[1, 2, 3], 0).unwrap();
    assert_eq!(s.cod().size(), 7);
    assert_ok(&s);
}

#[test]
fn rotate_trivial_and_small() {
    let s = rotate_mt(&[5], 0).unwrap();
    assert_eq!(s.apply(Side::Dom, &s.dom().elements()[0].0).1.ints(), &[4]);
    assert_ok(&s);
    assert_ok(&rotate_mt(&[1, 2], 0).unwrap());
}

#[test]
fn rotate_grid() {
    for n in 1..=3 {
        for k in grid(n, 0, 3) {
            let s = rotate_mt(&k, 0).unwrap();
            assert_eq!(s.dom().size(), (-1i64).pow(n as u32 - 1) * mt(&rot(&k)).size());
            assert_ok(&s);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rotation_law(k in proptest::collection::vec(-2i64..4, 1..=3)) {
        let n = k.len() as u32;
        prop_assert_eq!(mt(&k).size(), (-1i64).pow(n - 1) * mt(&rot(&k)).size());
        prop_assert_eq!(mt(&k).size(), sgt(&k).size());
    }

    #[test]
    fn elementary_sets_vanish(k in proptest::collection::vec(-2i64..4, 1..=3), j in 1usize..4) {
        prop_assert_eq!(e_set(&k, j as i64).size(), 0);
        prop_assert_eq!(f_set(&k, j as i64).size(), 0);
        prop_assert_eq!(vu_sum(&k, j, 1, 1), 0);
    }
}
