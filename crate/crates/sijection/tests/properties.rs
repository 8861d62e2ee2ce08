use std::collections::HashSet;

use proptest::prelude::*;
use sijection::{matching, Sign, SignedSet, Sijection};

#[derive(Clone, Debug)]
enum Shape {
    Interval(i64, i64),
    Neg(Box<Shape>),
    Product(Box<Shape>, Box<Shape>),
    Union(Box<Shape>, Box<Shape>),
    // ⨆_{t ∈ [a,b]} [0, t + shift]
    Indexed(i64, i64, i64),
}

fn build(s: &Shape) -> SignedSet {
    match s {
        Shape::Interval(a, b) => SignedSet::interval(*a, *b),
        Shape::Neg(x) => build(x).neg(),
        Shape::Product(x, y) => SignedSet::product(build(x), build(y)),
        Shape::Union(x, y) => SignedSet::union(build(x), build(y)),
        Shape::Indexed(a, b, shift) => {
            let shift = *shift;
            SignedSet::indexed(SignedSet::interval(*a, *b), format!("fam{shift}"), move |t| {
                SignedSet::interval(0, t.ints()[0] + shift)
            })
        }
    }
}

fn shape() -> impl Strategy<Value = Shape> {
    let leaf = prop_oneof![
        (-3i64..4, -3i64..4).prop_map(|(a, b)| Shape::Interval(a, b)),
        (-2i64..3, -2i64..3, -2i64..2).prop_map(|(a, b, s)| Shape::Indexed(a, b, s)),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|x| Shape::Neg(Box::new(x))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Shape::Product(Box::new(x), Box::new(y))),
            (inner.clone(), inner).prop_map(|(x, y)| Shape::Union(Box::new(x), Box::new(y))),
        ]
    })
}

fn enumerated_size(s: &SignedSet) -> i64 {
    s.iter().map(|(_, sign)| sign.as_i64()).sum()
}

proptest! {
    #[test]
    fn interval_split_law(a in -4i64..5, b in -4i64..5, c in -4i64..5) {
        let whole = SignedSet::interval(a, c).size();
        let parts = SignedSet::interval(a, b).size() + SignedSet::interval(b + 1, c).size();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn structural_size_matches_enumeration(s in shape()) {
        let set = build(&s);
        prop_assert_eq!(set.size(), enumerated_size(&set));
    }

    #[test]
    fn enumeration_is_duplicate_free_and_signs_agree(s in shape()) {
        let set = build(&s);
        let mut seen = HashSet::new();
        for (e, sign) in set.iter() {
            prop_assert!(seen.insert(e.canonical_encode()));
            prop_assert_eq!(set.sign_of(&e), Some(sign));
        }
        prop_assert_eq!(seen.len() as u64, set.counts().total());
    }

    #[test]
    fn product_and_union_sizes(x in shape(), y in shape()) {
        let (a, b) = (build(&x), build(&y));
        prop_assert_eq!(SignedSet::product(a.clone(), b.clone()).size(), a.size() * b.size());
        prop_assert_eq!(SignedSet::union(a.clone(), b.clone()).size(), a.size() + b.size());
        prop_assert_eq!(a.neg().size(), -a.size());
    }

    #[test]
    fn fallback_matches_equal_sizes(x in shape(), y in shape()) {
        let (a, b) = (build(&x), build(&y));
        // [100, 99 + d] has size d for either sign of d
        let pad = SignedSet::interval(100, 99 + a.size() - b.size());
        let b = SignedSet::union(b, pad);
        let m = matching(a, b, "fallback").unwrap();
        prop_assert!(m.verify().ok);
    }

    #[test]
    fn product_of_sijections_verifies(x in shape(), y in shape()) {
        let (a, b) = (build(&x), build(&y));
        let ma = matching(a.clone(), a.clone().neg().neg(), "a").unwrap();
        let mb = Sijection::cancel_opposites(b.clone());
        let p = Sijection::product(&ma, &mb);
        prop_assert!(p.verify().ok);
        prop_assert!(p.invert().then(&p).verify().ok);
    }
}

#[test]
fn signs_multiply() {
    assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
    assert_eq!(Sign::parity(-3), Sign::Minus);
}
