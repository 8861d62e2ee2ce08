use sijection::{Element, Side, Sign, SignedSet};
use subsets::*;

// counts k-subsets with a bitmask scan, independent of k_subsets
fn brute_binomial(m: i64, k: i64) -> i64 {
    if m < 0 {
        return (k == 0) as i64;
    }
    (0u32..1 << m).filter(|s| s.count_ones() as i64 == k).count() as i64
}

fn brute_bsets(n: i64) -> Vec<(Vec<i64>, i64)> {
    let m = 3 * n - 2;
    let mut out = Vec::new();
    for s in 0u32..1 << m {
        if s.count_ones() as i64 != 2 * n - 1 {
            continue;
        }
        let v: Vec<i64> = (0..m).filter(|b| s >> b & 1 == 1).map(|b| b + 1).collect();
        let median = v[(n - 1) as usize];
        out.push((v, median - n + 1));
    }
    out.sort();
    out
}

fn is_normal(phi: &sijection::Sijection) -> bool {
    [Side::Dom, Side::Cod].into_iter().all(|side| {
        phi.set(side).elements().iter().all(|(e, _)| phi.apply(side, e).1.flatten() == e.flatten())
    })
}

#[test]
fn alpha_grid_is_valid_and_normal() {
    for a in -3..=3 {
        for b in -3..=3 {
            for c in -3..=3 {
                let phi = alpha(a, b, c);
                let report = phi.verify();
                assert!(report.ok, "{a},{b},{c}: {:?}", report.counterexample);
                assert!(is_normal(&phi), "{a},{b},{c}");
            }
        }
    }
}

#[test]
fn alpha_examples() {
    let phi = alpha(1, 2, 5);
    for x in 1..=5 {
        let (side, y) = phi.apply(Side::Dom, &Element::int(vec![x]));
        assert_eq!(side, Side::Cod);
        let want = if x <= 2 { Element::left(Element::int(vec![x])) } else { Element::right(Element::int(vec![x])) };
        assert_eq!(y, want);
    }

    let phi = alpha(1, 4, 2);
    assert_eq!(phi.cod().counts().plus, 4);
    assert_eq!(phi.cod().counts().minus, 2);
    for x in [3, 4] {
        let (side, y) = phi.apply(Side::Cod, &Element::left(Element::int(vec![x])));
        assert_eq!((side, y), (Side::Cod, Element::right(Element::int(vec![x]))));
    }
    for x in [1, 2] {
        let (side, y) = phi.apply(Side::Dom, &Element::int(vec![x]));
        assert_eq!((side, y), (Side::Cod, Element::left(Element::int(vec![x]))));
    }
}

#[test]
fn alpha_combinations_verify() {
    assert!(alpha(1, 4, 2).neg().verify().ok);
    assert!(sijection::Sijection::product(&alpha(1, 4, 2), &alpha(0, 2, 1)).verify().ok);
    let round = alpha(1, 2, 3).compose(&alpha(1, 2, 3).invert()).unwrap();
    for (e, _) in round.dom().elements() {
        assert_eq!(round.apply(Side::Dom, &e), (Side::Cod, e.clone()));
    }
}

#[test]
fn trinomial_examples() {
    let t = trinomial(0, 0, 0).unwrap();
    assert_eq!(t.dom().size(), 1);
    assert_eq!(t.cod().size(), 1);
    assert!(t.verify().ok);

    let t = trinomial(1, 1, 0).unwrap();
    let e = Element::pair(Element::int(vec![1]), Element::int(vec![1]));
    assert_eq!(t.apply(Side::Dom, &e), (Side::Cod, Element::pair(Element::int(vec![2]), Element::int(vec![]))));
    let e = Element::pair(Element::int(vec![2]), Element::int(vec![1]));
    assert_eq!(t.apply(Side::Dom, &e), (Side::Cod, Element::pair(Element::int(vec![1]), Element::int(vec![]))));
    assert!(t.verify().ok);
}

#[test]
fn trinomial_grid() {
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                let lhs = brute_binomial(a + b + c, a) * brute_binomial(b + c, b);
                let rhs = brute_binomial(a + b + c, b) * brute_binomial(a + c, c);
                assert_eq!(lhs, rhs);
                if a + b + c <= 6 {
                    let t = trinomial(a, b, c).unwrap();
                    assert_eq!(t.dom().size(), lhs);
                    assert!(t.verify().ok, "{a},{b},{c}");
                }
            }
        }
    }
    assert!(trinomial(-1, 0, 0).is_err());
}

#[test]
fn chu_vandermonde_examples() {
    let cv = chu_vandermonde(2, 1, 1).unwrap();
    let c = cv.dom().counts();
    assert_eq!((c.plus, c.minus), (2, 1));
    assert_eq!(cv.cod().elements(), vec![(Element::int(vec![1]), Sign::Plus)]);
    assert!(cv.verify().ok);

    let cv = chu_vandermonde(1, 2, 2).unwrap();
    assert_eq!(cv.cod().elements().len(), 0);
    assert_eq!(cv.dom().size(), 0);
    assert!(cv.verify().ok);

    // at b = a+c the right side is (-1)^c C([c],c), a single point
    let cv = chu_vandermonde(1, 2, 1).unwrap();
    assert_eq!(cv.cod().elements(), vec![(Element::int(vec![1]), Sign::Minus)]);
    assert_eq!(cv.dom().size(), -1);
    assert!(cv.verify().ok);

    assert!(chu_vandermonde(0, 1, 1).is_err());
}

#[test]
fn chu_vandermonde_grid() {
    for a in 1..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                let cv = chu_vandermonde(a, b, c).unwrap();
                let report = cv.verify();
                assert!(report.ok, "{a},{b},{c}: {:?}", report.counterexample);
                if a < b && b < a + c {
                    assert_eq!(cv.cod().elements().len(), 0, "{a},{b},{c}");
                }
            }
        }
    }
}

#[test]
fn bsets_match_brute_force() {
    for n in 1..=4 {
        let brute = brute_bsets(n);
        for i in 1..=n {
            let want: Vec<Vec<i64>> = brute.iter().filter(|(_, j)| *j == i).map(|(v, _)| v.clone()).collect();
            let got: Vec<Vec<i64>> = bset(n, i).elements().into_iter().map(|(e, _)| e.ints().to_vec()).collect();
            assert_eq!(got, want, "{n},{i}");
            assert_eq!(got.len() as i64, brute_binomial(n + i - 2, n - 1) * brute_binomial(2 * n - i - 1, n - 1));
        }
        assert_eq!(bset_all(n).len(), brute.len());
    }
    let sizes: Vec<i64> = (1..=3).map(|i| bset(3, i).size()).collect();
    assert_eq!(sizes, vec![6, 9, 6]);
}

#[test]
fn b_split_examples() {
    let s = b_split(3, 2).unwrap();
    let e = Element::int(vec![2, 3, 4, 5, 7]);
    assert_eq!(s.apply(Side::Dom, &e), (Side::Cod, Element::pair(Element::int(vec![2, 3]), Element::int(vec![1, 3]))));
    assert_eq!(format_bset(e.ints()), "23457");

    let s = b_split(1, 1).unwrap();
    assert_eq!(s.apply(Side::Dom, &Element::int(vec![1])), (Side::Cod, Element::pair(Element::int(vec![]), Element::int(vec![]))));
    assert_eq!(b_split(3, 1).unwrap().dom().size(), 6);
    assert!(b_split(3, 0).is_err());
    assert!(b_split(3, 4).is_err());
    for n in 1..=4 {
        for i in 1..=n {
            assert!(b_split(n, i).unwrap().verify().ok);
        }
    }
}

#[test]
fn b_recurrence_size_identity() {
    let n = 3;
    let i = 2;
    let total: i64 = (1..=n)
        .map(|j| if j % 2 == 1 { 1 } else { -1 } * brute_binomial(2 * n - i - 1, n - i - j + 1) * bset(n, j).size())
        .sum();
    assert_eq!(total, 9);
    assert_eq!(b_recurrence_lhs(n, i).size(), 9);
}

#[test]
fn b_recurrence_verifies() {
    for n in 1..=3 {
        for i in 1..=n {
            let phi = b_recurrence(n, i).unwrap();
            let report = phi.verify();
            assert!(report.ok, "{n},{i}: {:?}", report.counterexample);
        }
    }
}

#[test]
fn complements() {
    let c = binom_complement(4, 0);
    assert_eq!(c.apply(Side::Dom, &Element::int(vec![])), (Side::Cod, Element::int(vec![1, 2, 3, 4])));
    for m in 0..=5 {
        for k in 0..=m {
            let c = binom_complement(m, k);
            assert_eq!(c.dom().size(), brute_binomial(m, m - k));
            assert!(c.verify().ok);
        }
    }
    assert_eq!(binom(3, 2).elements().len() as i64, SignedSet::interval(1, 3).size());
}

mod properties {
    use proptest::prelude::*;
    use sijection::Side;
    use subsets::*;

    proptest! {
        #[test]
        fn alpha_verifies_on_wide_intervals(a in -8i64..8, b in -8i64..8, c in -8i64..8) {
            let s = alpha(a, b, c);
            prop_assert!(s.verify().ok);
            prop_assert_eq!(s.dom().size(), c - a + 1);
        }

        #[test]
        fn complement_is_an_involution(m in 0i64..7, k in 0i64..7) {
            let s = binom_complement(m, k);
            for (e, _) in s.dom().iter() {
                let (_, y) = s.apply(Side::Dom, &e);
                prop_assert_eq!(y.ints().len() as i64, m - k);
                prop_assert_eq!(s.apply(Side::Cod, &y), (Side::Dom, e));
            }
        }

        #[test]
        fn chu_vandermonde_sizes(a in 1i64..6, b in 0i64..6, c in 0i64..6) {
            let s = chu_vandermonde(a, b, c).unwrap();
            let lhs: i64 = (0..=c).map(|j| if j % 2 == 0 { 1 } else { -1 } * binomial(b, j) * binomial(a + c - j - 1, a - 1)).sum();
            prop_assert_eq!(s.dom().size(), lhs);
            prop_assert_eq!(s.cod().size(), lhs);
            prop_assert!(s.verify().ok);
        }

        #[test]
        fn trinomial_keeps_sets_disjoint(a in 0i64..4, b in 0i64..4, c in 0i64..4) {
            let s = trinomial(a, b, c).unwrap();
            prop_assert!(s.verify().ok);
            prop_assert_eq!(s.dom().size(), binomial(a + b + c, a) * binomial(b + c, b));
        }
    }
}
