use linalg::*;
use proptest::prelude::*;
use sijection::{matching, Sign, SignedSet, Sijection};

// Laplace expansion along the first row
fn numeric_det(a: &[Vec<i64>]) -> i64 {
    let m = a.len();
    if m == 0 {
        return 1;
    }
    (0..m)
        .map(|j| {
            let minor: Vec<Vec<i64>> =
                a[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * a[0][j] * numeric_det(&minor)
        })
        .sum()
}

fn interval_matrix(m: usize, ends: &[(i64, i64)]) -> Matrix {
    Matrix::from_fn(m, |i, j| {
        let (a, b) = ends[i * m + j];
        SignedSet::interval(a, b)
    })
}

fn entries(m: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((0i64..3, 0i64..3), m * m)
}

#[test]
fn determinant_examples() {
    let diag = Matrix::from_fn(3, |i, j| if i == j { SignedSet::singleton(vec![i as i64], Sign::Plus) } else { SignedSet::empty() });
    let d = determinant(&diag);
    assert_eq!(d.elements().len(), 1);
    assert_eq!(d.elements()[0].1, Sign::Plus);

    let p = interval_matrix(2, &[(1, 2), (1, 1), (1, 1), (1, 3)]);
    assert_eq!(determinant(&p).size(), 5);
    let c = determinant(&p).counts();
    assert_eq!((c.plus, c.minus), (6, 1));
}

#[test]
fn det_product_small_cases() {
    let p = interval_matrix(1, &[(1, 3)]);
    let q = interval_matrix(1, &[(3, 1)]);
    let s = det_product(&p, &q).unwrap();
    assert!(s.verify().ok);
    assert_eq!(s.dom().size(), -3);

    let p = interval_matrix(2, &[(1, 2), (3, 1), (0, 0), (1, 3)]);
    let q = interval_matrix(2, &[(1, 1), (2, 3), (5, 3), (0, 1)]);
    let s = det_product(&p, &q).unwrap();
    let r = s.verify();
    assert!(r.ok, "{:?}", r.counterexample);

    assert!(det_product(&p, &interval_matrix(1, &[(1, 1)])).is_err());
}

fn toy_rows(p: &Matrix, xs: &[SignedSet], ys: &[SignedSet]) -> Vec<Sijection> {
    let m = p.dim();
    (0..m)
        .map(|i| {
            let dom = SignedSet::union_all((0..m).map(|q| SignedSet::product(p.get(i, q).clone(), xs[q].clone())).collect());
            matching(dom, ys[i].clone(), format!("row {i}")).unwrap()
        })
        .collect()
}

// Y_i is an interval whose size is that of row i
fn toy_targets(p: &Matrix, xs: &[SignedSet]) -> Vec<SignedSet> {
    let m = p.dim();
    (0..m)
        .map(|i| {
            let size: i64 = (0..m).map(|q| p.get(i, q).size() * xs[q].size()).sum();
            SignedSet::interval(1, size)
        })
        .collect()
}

#[test]
fn cramer_one_by_one() {
    let p = interval_matrix(1, &[(1, 2)]);
    let xs = vec![SignedSet::interval(1, 3)];
    let ys = toy_targets(&p, &xs);
    let rows = toy_rows(&p, &xs, &ys);
    let c = cramer(&p, &xs, &ys, &rows).unwrap();
    assert!(c[0].verify().ok);
    assert_eq!(c[0].cod().size(), 6);
}

#[test]
fn cramer_toys() {
    let p = interval_matrix(2, &[(1, 2), (1, 1), (2, 1), (1, 3)]);
    let xs = vec![SignedSet::interval(1, 2), SignedSet::interval(4, 2)];
    let ys = toy_targets(&p, &xs);
    let rows = toy_rows(&p, &xs, &ys);
    let sols = cramer(&p, &xs, &ys, &rows).unwrap();
    let det = determinant(&p).size();
    for (j, s) in sols.iter().enumerate() {
        let r = s.verify();
        assert!(r.ok, "{j}: {:?}", r.counterexample);
        assert_eq!(det * xs[j].size(), s.cod().size());
    }

    let p = interval_matrix(3, &[(1, 2), (0, 0), (2, 1), (1, 1), (1, 3), (0, 1), (3, 1), (1, 1), (1, 2)]);
    let xs = vec![SignedSet::interval(1, 2), SignedSet::interval(3, 1), SignedSet::interval(0, 0)];
    let ys = toy_targets(&p, &xs);
    let rows = toy_rows(&p, &xs, &ys);
    for s in cramer(&p, &xs, &ys, &rows).unwrap() {
        let r = s.verify();
        assert!(r.ok, "{:?}", r.counterexample);
    }
}

#[test]
fn cramer_rejects_wrong_rows() {
    let p = interval_matrix(2, &[(1, 2), (1, 1), (2, 1), (1, 3)]);
    let xs = vec![SignedSet::interval(1, 2), SignedSet::interval(4, 2)];
    let ys = toy_targets(&p, &xs);
    let mut rows = toy_rows(&p, &xs, &ys);
    rows.swap(0, 1);
    assert!(cramer(&p, &xs, &ys, &rows).is_err());
    assert!(cramer(&p, &xs[..1], &ys, &rows).is_err());
}

#[test]
fn solve_zero_toys() {
    let empty = vec![SignedSet::empty(), SignedSet::empty()];
    let p = interval_matrix(2, &[(1, 2), (1, 1), (2, 1), (1, 3)]);
    let rows = toy_rows(&p, &empty, &empty);
    for s in solve_zero(&p, &empty, &rows).unwrap() {
        assert!(s.verify().ok);
        assert_eq!(s.dom().elements().len(), 0);
    }

    // each row sums to zero: P_{i,1} × X_1 and P_{i,2} × X_2 cancel
    let p = interval_matrix(2, &[(1, 1), (1, 1), (1, 2), (1, 2)]);
    let xs = vec![SignedSet::interval(1, 2), SignedSet::interval(1, 2).neg()];
    let rows = toy_rows(&p, &xs, &empty);
    for (j, s) in solve_zero(&p, &xs, &rows).unwrap().into_iter().enumerate() {
        let r = s.verify();
        assert!(r.ok, "{:?}", r.counterexample);
        assert_eq!(determinant(&p).size() * xs[j].size(), 0);
        assert!(!s.dom().elements().is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn determinant_size_is_numeric(ends in entries(3)) {
        let p = interval_matrix(3, &ends);
        prop_assert_eq!(determinant(&p).size(), numeric_det(&p.sizes()));
        let enumerated: i64 = determinant(&p).elements().iter().map(|(_, s)| s.as_i64()).sum();
        prop_assert_eq!(enumerated, numeric_det(&p.sizes()));
    }

    #[test]
    fn det_product_verifies_for_two_by_two(a in entries(2), b in entries(2)) {
        let p = interval_matrix(2, &a);
        let q = interval_matrix(2, &b);
        let s = det_product(&p, &q).unwrap();
        prop_assert!(s.verify().ok);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn det_product_verifies_for_three_by_three(a in entries(3), b in entries(3)) {
        let p = interval_matrix(3, &a);
        let q = interval_matrix(3, &b);
        let s = det_product(&p, &q).unwrap();
        prop_assert!(s.verify().ok);
        prop_assert_eq!(s.dom().size(), numeric_det(&p.sizes()) * numeric_det(&q.sizes()));
    }
}

fn shifted(p: &Matrix, by: i64) -> Matrix {
    Matrix::from_fn(p.dim(), |i, j| {
        let els = p.get(i, j).elements();
        SignedSet::atoms(format!("shift{by}({i},{j})"), els.into_iter().map(|(e, s)| (vec![e.ints()[0] + by], s)).collect())
    })
}

#[test]
fn det_map_rejects_foreign_entries() {
    let p = interval_matrix(2, &[(1, 2), (1, 1), (1, 1), (1, 3)]);
    let q = shifted(&p, 10);
    let res = det_map(&p, &q, |i, j| Sijection::identity(p.get(i, j).clone()));
    assert!(res.is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn det_map_verifies(a in entries(3)) {
        let p = interval_matrix(3, &a);
        let q = shifted(&p, 10);
        let s = det_map(&p, &q, |i, j| matching(p.get(i, j).clone(), q.get(i, j).clone(), "toy").unwrap()).unwrap();
        let r = s.verify();
        prop_assert!(r.ok, "{:?}", r.counterexample);
        prop_assert_eq!(s.cod().size(), numeric_det(&p.sizes()));
    }
}
