use patterns::*;
use proptest::prelude::*;
use sijection::{Element, Sign};

// signed count straight from the recursive definition
fn gt_count(k: &[i64]) -> i64 {
    if k.len() <= 1 {
        return 1;
    }
    let ranges: Vec<(Vec<i64>, i64)> = k
        .windows(2)
        .map(|w| if w[0] <= w[1] { ((w[0]..=w[1]).collect(), 1) } else { ((w[1] + 1..w[0]).collect(), -1) })
        .collect();
    let mut total = 0;
    let mut idx = vec![0usize; ranges.len()];
    if ranges.iter().any(|(r, _)| r.is_empty()) {
        return 0;
    }
    loop {
        let l: Vec<i64> = idx.iter().zip(&ranges).map(|(&i, (r, _))| r[i]).collect();
        let sign: i64 = ranges.iter().map(|(_, s)| s).product();
        total += sign * gt_count(&l);
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return total;
            }
            idx[pos] += 1;
            if idx[pos] < ranges[pos].0.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

// classical patterns for weakly increasing rows
fn classical_count(k: &[i64]) -> i64 {
    if k.len() <= 1 {
        return 1;
    }
    let mut rows = vec![Vec::new()];
    for i in 0..k.len() - 1 {
        rows = rows
            .into_iter()
            .flat_map(|r: Vec<i64>| (k[i]..=k[i + 1]).map(move |v| [r.clone(), vec![v]].concat()))
            .collect();
    }
    rows.iter().map(|l| classical_count(l)).sum()
}

fn brute_asms(n: usize) -> Vec<Vec<Vec<i64>>> {
    let cells = n * n;
    let mut out = Vec::new();
    for code in 0..3usize.pow(cells as u32) {
        let mut c = code;
        let a: Vec<i64> = (0..cells).map(|_| { let v = (c % 3) as i64 - 1; c /= 3; v }).collect();
        let m: Vec<Vec<i64>> = a.chunks(n).map(|r| r.to_vec()).collect();
        let ok_line = |line: Vec<i64>| {
            let nz: Vec<i64> = line.into_iter().filter(|&x| x != 0).collect();
            nz.iter().sum::<i64>() == 1 && nz.windows(2).all(|w| w[0] != w[1]) && nz.first() == Some(&1)
        };
        if (0..n).all(|i| ok_line(m[i].clone())) && (0..n).all(|j| ok_line((0..n).map(|i| m[i][j]).collect())) {
            out.push(m);
        }
    }
    out
}

fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<i64>| (lo..=hi).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

#[test]
fn gt_examples() {
    assert_eq!(gt(&[5]).elements(), vec![(Element::unit(), Sign::Plus)]);
    assert_eq!(gt(&[1, 2, 3]).size(), 8);
    assert_eq!(gt(&[1, 2, 3]).elements().len(), 8);
    assert_eq!(gt(&[2, 1]).size(), 0);
}

#[test]
fn gt_sizes_match_the_recursion() {
    for n in 1..=4 {
        for k in grid(n, 0, 4) {
            assert_eq!(gt(&k).size(), gt_count(&k), "{k:?}");
            if k.windows(2).all(|w| w[0] <= w[1]) {
                assert_eq!(gt(&k).size(), classical_count(&k), "{k:?}");
            }
        }
    }
}

#[test]
fn gt_shift_moves_every_entry() {
    let s = gt_shift(&[1, 3, 2], -1);
    assert!(s.verify().ok);
    assert_eq!(s.cod().size(), gt(&[0, 2, 1]).size());
}

#[test]
fn interlacing_examples() {
    assert!(interlaces(&[1], &[1, 2]));
    assert!(!interlaces(&[2, 2], &[1, 2, 3]));
    assert!(interlaces(&[3, 3], &[1, 3, 2]));
    // (d) fails at i = 1
    assert!(!interlaces(&[3, 2], &[3, 1, 2]));
    // (c) fails at i = n-1
    assert!(!interlaces(&[1, 2], &[1, 3, 2]));
}

#[test]
fn mt_examples() {
    assert_eq!(mt(&[1, 2, 3]).size(), 7);
    assert_eq!(mt(&[1]).size(), 1);
    let t = vec![vec![4], vec![3, 5], vec![3, 4, 5], vec![3, 3, 4, 5], vec![5, 3, 1, 4, 6]];
    assert_eq!(mt_sign(&t), Sign::Minus);
    for r in 1..t.len() {
        assert!(interlaces(&t[r - 1], &t[r]));
    }
    assert_eq!(mt(&[5, 3, 1, 4, 6]).sign(&mt_element(&t)), Sign::Minus);
    assert_eq!(mt_rows(&mt_element(&t)), t);
    assert_eq!(format_triangle(&t[..3]), "  4\n 3 5\n3 4 5");
}

#[test]
fn increasing_bottom_rows_give_positive_triangles() {
    for n in 1..=4 {
        for k in grid(n, 0, 4) {
            if k.windows(2).all(|w| w[0] <= w[1]) {
                assert!(mt(&k).elements().iter().all(|(_, s)| *s == Sign::Plus), "{k:?}");
            }
        }
    }
}

#[test]
fn asm_triangle_correspondence() {
    let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    assert_eq!(asm_to_mt(&id), vec![vec![1], vec![1, 2], vec![1, 2, 3]]);
    let a = vec![vec![0, 1, 0], vec![1, -1, 1], vec![0, 1, 0]];
    assert_eq!(asm_to_mt(&a), vec![vec![2], vec![1, 3], vec![1, 2, 3]]);
    for n in 1..=3 {
        let asms = brute_asms(n);
        let k: Vec<i64> = (1..=n as i64).collect();
        assert_eq!(asms.len() as i64, mt(&k).size());
        for a in asms {
            let t = asm_to_mt(&a);
            assert!(mt(&k).contains(&mt_element(&t)));
            assert_eq!(mt_to_asm(&t), a);
        }
    }
}

#[test]
fn refined_triangles() {
    let k = [1, 2, 3];
    let sizes: Vec<i64> = (1..=3).map(|i| mt_i(&k, i).size()).collect();
    assert_eq!(sizes.iter().sum::<i64>(), 7);
    assert_eq!(sizes[1], 3);
    // i = n pins the whole left edge to k_1
    let pinned = mt_i(&k, 3);
    assert!(pinned.elements().iter().all(|(e, _)| mt_rows(e).iter().all(|r| r[0] == 1)));
    assert_eq!(pinned.size(), 2);
    let upper: Vec<i64> = (1..=3).map(|i| mt_upper_i(&k, i).size()).collect();
    assert_eq!(upper, sizes);
    assert_eq!(mt_i(&k, 4).size(), 0);
}

#[test]
fn arrow_patterns() {
    assert_eq!(deform(&[0, 0], &[SE]), vec![0, -1]);
    assert_eq!(deform(&[0, 0], &[SW]), vec![1, 0]);
    assert_eq!(deform(&[4], &[]), vec![4]);
    assert_eq!(ap(3).elements().len(), 27);
    assert_eq!(ap(3).size(), 1);
    assert_eq!(ar(2).size(), 1);
    // μT' and T'μ have μ on the outer diagonals
    let t = mu_t(&[NW, BOTH], &[SE]);
    let p = ArrowPattern::new(3, t);
    assert_eq!((p.get(1, 2), p.get(1, 3), p.get(2, 3)), (SW, BOTH, SE));
    let p = ArrowPattern::new(3, t_mu(&[SE], &[NE, NW]));
    assert_eq!((p.get(1, 3), p.get(2, 3), p.get(1, 2)), (SE, SW, SE));
}

#[test]
fn sgt_examples() {
    assert_eq!(sgt(&[1, 2, 3]).size(), 7);
    assert_eq!(sgt(&[4]).size(), 1);
    assert_eq!(sgt(&[1, 2]).size(), mt(&[1, 2]).size());
    assert_eq!(sgt(&[1, 2]).size(), 2);
}

#[test]
fn pi_examples() {
    let p = pi_sij(&[1, 2], 1, Impl::Fallback).unwrap();
    assert_eq!(gt(&[3, 0]).size(), -2);
    assert_eq!(p.dom().size(), 2);
    assert_eq!(p.cod().size(), 2);
    assert!(p.cod().same(&gt(&[3, 0]).neg()));
    assert!(p.verify().ok);
    assert!(pi_sij(&[1, 2], 2, Impl::Fallback).is_err());
    assert!(pi_sij(&[1, 2], 1, Impl::PartI).is_err());
    for n in 2..=3 {
        for k in grid(n, 0, 3) {
            for i in 1..n {
                assert_eq!(gt(&k).size(), -gt(&pi_target(&k, i)).size(), "{k:?} {i}");
            }
        }
    }
    assert!(pi_sij(&[0, 3, 1], 2, Impl::Fallback).unwrap().verify().ok);
}

#[test]
fn gamma_examples() {
    let g = gamma(&[1, 2, 3], 0, Impl::Fallback).unwrap();
    assert_eq!(g.dom().size(), 7);
    assert_eq!(g.cod().size(), 7);
    assert!(g.verify().ok);
    assert!(gamma(&[1, 2, 3], 0, Impl::PartI).is_err());
    assert!(gamma(&[2, 0, 1], 1, Impl::Fallback).unwrap().verify().ok);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mt_and_sgt_agree(k in prop::collection::vec(-2i64..5, 1..=3)) {
        prop_assert_eq!(mt(&k).size(), sgt(&k).size());
    }

    #[test]
    fn enumeration_is_duplicate_free(k in prop::collection::vec(0i64..4, 1..=4)) {
        let mut keys: Vec<Vec<u8>> = gt(&k).elements().iter().map(|(e, _)| e.canonical_encode()).collect();
        let len = keys.len();
        keys.sort();
        keys.dedup();
        prop_assert_eq!(keys.len(), len);
    }

    #[test]
    fn c_vector_sums_to_zero_minus_both(t in prop::collection::vec(0i64..3, 6)) {
        // every ↙ adds one and every ↘ subtracts one
        let c = c_vector(4, &t);
        let sw = t.iter().filter(|&&x| x != SE).count() as i64;
        let se = t.iter().filter(|&&x| x != SW).count() as i64;
        prop_assert_eq!(c.iter().sum::<i64>(), sw - se);
    }
}
