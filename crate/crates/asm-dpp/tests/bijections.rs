use asm_dpp::*;
use proptest::prelude::*;
use sijection::{Element, Sign, SignedSet, Sijection};
use subsets::binomial;

fn full_check(b: &Bijection, expected: usize) {
    let r = b.sijection().verify();
    assert!(r.ok, "{}: {:?}", r.name, r.counterexample);
    assert_eq!(b.check().unwrap(), expected);
    assert_eq!(b.dom().counts().minus + b.cod().counts().minus, 0);
}

#[test]
fn main_bijection_up_to_three() {
    for n in 1..=3usize {
        for i in 1..=n {
            // |DPP_{n-1}| |B_{n,1}| |ASM_{n,i}|
            let b1 = (binomial(n as i64 - 1, n as i64 - 1) * binomial(2 * n as i64 - 2, n as i64 - 1)) as usize;
            let expected = enumerate_dpp(n - 1).len() * b1 * enumerate_asm_i(n, i).len();
            for x in 0..=1 {
                full_check(&main_bijection(n, i, x).unwrap(), expected);
            }
        }
    }
}

#[test]
fn main_bijection_cardinality() {
    let b = main_bijection(3, 2, 0).unwrap();
    assert_eq!(b.pairs().len(), 36);
    assert_eq!(b.dom().size(), 2 * 6 * 3);
    assert_eq!(b.cod().size(), 2 * 2 * 9);
}

#[test]
fn trivial_cases_are_singletons() {
    let b = main_bijection(1, 1, 0).unwrap();
    assert_eq!(b.pairs().len(), 1);
    let b = asm_to_dpp(1, 1, 0).unwrap();
    assert_eq!(b.pairs().len(), 1);
}

#[test]
fn out_of_range_parameters() {
    assert!(main_bijection(3, 0, 0).is_err());
    assert!(main_bijection(3, 4, 0).is_err());
    assert!(asm_to_dpp(0, 1, 0).is_err());
    assert!(asm_to_dpp(2, 3, 0).is_err());
}

#[test]
fn bijections_refuse_negative_sets() {
    let s = Sijection::identity(SignedSet::singleton(vec![1], Sign::Minus));
    assert!(Bijection::new(s).is_err());
}

#[test]
fn asm_to_dpp_up_to_three() {
    for n in 1..=3usize {
        for i in 1..=n {
            let expected = enumerate_dpp(n - 1).len() * enumerate_asm_i(n, i).len();
            for x in 0..=1 {
                full_check(&asm_to_dpp(n, i, x).unwrap(), expected);
            }
        }
    }
}

#[test]
fn asm_to_dpp_four() {
    for i in 1..=4usize {
        let b = asm_to_dpp(4, i, 0).unwrap();
        assert_eq!(b.check().unwrap(), 7 * enumerate_asm_i(4, i).len());
    }
}

#[test]
fn images_land_in_the_right_families() {
    let b = asm_to_dpp(3, 2, 0).unwrap();
    for (l, r) in b.pairs() {
        let (d, a) = l.pair_parts();
        let (a1, d2) = r.pair_parts();
        assert!(Dpp::from_element(d).max_part() <= 2);
        assert_eq!(Asm::from_element(a).top_one(), 2);
        assert_eq!(Asm::from_element(a1).top_one(), 1);
        let d2 = Dpp::from_element(d2);
        assert!(d2.is_valid());
        assert_eq!(d2.count(3), 1);
    }
}

fn main_member(n: usize, i: usize) -> impl Strategy<Value = Element> {
    let members: Vec<Element> = main_bijection(n, i, 0).unwrap().dom().iter().map(|(e, _)| e).collect();
    (0..members.len()).prop_map(move |k| members[k].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn main_round_trips(e in main_member(3, 2)) {
        let b = main_bijection(3, 2, 0).unwrap();
        let y = b.forward(&e);
        prop_assert!(b.cod().contains(&y));
        prop_assert_eq!(b.backward(&y), e);
    }

    #[test]
    fn main_keeps_the_dpp(e in main_member(3, 3)) {
        let b = main_bijection(3, 3, 0).unwrap();
        let y = b.forward(&e);
        let (d, _) = y.pair_parts();
        prop_assert!(Dpp::from_element(d).max_part() <= 2);
    }
}

#[test]
fn main_bijection_four() {
    for i in 1..=4usize {
        let b = main_bijection(4, i, 0).unwrap();
        let expected = 7 * binomial(6, 3) as usize * enumerate_asm_i(4, i).len();
        assert_eq!(b.check().unwrap(), expected);
    }
}

#[test]
fn table_lines() {
    let t = Table::new(Problem::Main, &main_bijection(3, 2, 0).unwrap()).unwrap();
    let lines = t.lines();
    assert_eq!(lines.len(), 36);
    assert!(lines.iter().all(|l| l.matches(" ↔ ").count() == 1));
    assert!(lines[0].starts_with("(∅, 12345, [["), "{}", lines[0]);
    let t = Table::new(Problem::AsmDpp, &asm_to_dpp(3, 3, 0).unwrap()).unwrap();
    assert_eq!(t.lines().len(), 4);
    assert!(t.lines().iter().any(|l| l.ends_with(", 3 3)")));
    assert_eq!(Table::new(Problem::Main, &main_bijection(1, 1, 0).unwrap()).unwrap().lines(), vec!["(∅, 1, [[1]]) ↔ (∅, [[1]], 1)"]);
}
