use linalg::{det_map, det_product, determinant, Matrix};
use sijection::{Element, Error, Side, Sign, SignedSet, Sijection};
use subsets::{binom, chu_vandermonde};

use crate::lgv::{lgv_dpp_sij, unused, w_matrix, zero_zero};

// All matrices below have order m = n-1 and are stored from 0.  Entry
// (a, b) of P is P_{a+2,b+2}; entry (a, b) of S, T, W is the one at
// (a+1, b+1).

fn complement(m: i64, s: &[i64]) -> Vec<i64> {
    (1..=m.max(0)).filter(|x| !s.contains(x)).collect()
}

fn neg_signed(s: Sijection, sign: Sign) -> Sijection {
    if sign.is_plus() {
        s
    } else {
        s.neg()
    }
}

/// `P_{i,j} = (-1)^{j+1} C([2n-i-1], n-i-j+1)`, plus `-[0,0]` when `i = j`.
pub fn p_matrix(n: usize) -> Matrix {
    let nn = n as i64;
    Matrix::from_fn(n - 1, |a, b| {
        let (i, j) = (a as i64 + 2, b as i64 + 2);
        let base = binom(2 * nn - i - 1, nn - i - j + 1).signed(Sign::parity(j + 1));
        if i == j {
            SignedSet::union(base, zero_zero().neg())
        } else {
            base
        }
    })
}

/// `S_{i,j} = (-1)^{i+j} C([n], j-i)`, upper unitriangular.
pub fn s_matrix(n: usize) -> Matrix {
    let nn = n as i64;
    Matrix::from_fn(n - 1, |a, b| {
        let (i, j) = (a as i64 + 1, b as i64 + 1);
        binom(nn, j - i).signed(Sign::parity(i + j))
    })
}

/// `T_{i,j} = (-1)^j C([n-i-2], j-1) ⊔ (-1)^{i+j+1} C([n], j-i)`, the first
/// part being empty in the last row.
pub fn t_matrix(n: usize) -> Matrix {
    let nn = n as i64;
    Matrix::from_fn(n - 1, |a, b| {
        let (i, j) = (a as i64 + 1, b as i64 + 1);
        let first = if i <= nn - 2 { binom(nn - i - 2, j - 1).signed(Sign::parity(j)) } else { SignedSet::empty() };
        SignedSet::union(first, binom(nn, j - i).signed(Sign::parity(i + j + 1)))
    })
}

pub(crate) fn negated(p: &Matrix) -> Matrix {
    Matrix::from_fn(p.dim(), |a, b| p.get(a, b).neg())
}

/// The only member of `det S`: the identity with empty subsets.
pub(crate) fn det_s_member(n: usize) -> Element {
    let m = n - 1;
    Element::at(Element::int((1..=m as i64).collect::<Vec<_>>()), Element::tuple(vec![Element::int(Vec::<i64>::new()); m]))
}

/// `R_{i,j} = ⨆_p S_{i,p} × P_{p+1,j+1} ⇒ T_{i,j}`.  The `[0,0]` part at
/// `p = j` is the second part of `T`; the rest goes through complements
/// and Chu–Vandermonde with `(n+j, n, n-i-j-1)`.
fn r_to_t(n: usize, r: &Matrix, t: &Matrix, a: usize, b: usize) -> Sijection {
    let m = n - 1;
    let nn = n as i64;
    let (i, j) = (a as i64 + 1, b as i64 + 1);
    let c = nn - i - j - 1;
    let cv = (c >= 0).then(|| chu_vandermonde(nn + j, nn, c).expect("valid parameters"));
    let from_cv = move |z: (Side, Element)| match z {
        (Side::Dom, at) => {
            let (k, body) = at.at_parts();
            let p = i + k.ints()[0];
            let (s, x) = body.pair_parts();
            let x = Element::int(complement(2 * nn - p - 2, x.ints()));
            let pe = if p == j { Element::left(x) } else { x };
            (Side::Dom, SignedSet::inject(p as usize - 1, m, Element::pair(s.clone(), pe)))
        }
        (Side::Cod, y) => (Side::Cod, Element::left(Element::int(complement(nn - i - 2, y.ints())))),
    };
    Sijection::new(r.get(a, b).clone(), t.get(a, b).clone(), format!("R→T({i},{j})"), move |side, e| match side {
        Side::Dom => {
            let (q, inner) = SignedSet::branch(m, e).expect("R member");
            let p = q as i64 + 1;
            let (s, pe) = inner.pair_parts();
            if p == j {
                if let Element::Right(_) = pe {
                    return (Side::Cod, Element::right(s.clone()));
                }
            }
            let x = if p == j { pe.as_left().expect("binomial part").ints() } else { pe.ints() };
            let x = complement(2 * nn - p - 2, x);
            let probe = Element::at(Element::int(vec![p - i]), Element::pair(s.clone(), Element::int(x)));
            from_cv(cv.as_ref().expect("c >= 0 when R has binomial members").apply(Side::Dom, &probe))
        }
        Side::Cod => match e {
            Element::Right(s) => {
                let inner = Element::pair((**s).clone(), unused());
                (Side::Dom, SignedSet::inject(j as usize - 1, m, inner))
            }
            Element::Left(y) => {
                let y = complement(nn - i - 2, y.ints());
                from_cv(cv.as_ref().expect("c >= 0").apply(Side::Cod, &Element::int(y)))
            }
            _ => panic!("T member expected, found {e:?}"),
        },
    })
}

/// `U_{i,j} = ⨆_p W_{i,p} × S_{p,j} ⇒ -T_{i,j}`, through complements and
/// Chu–Vandermonde with `(i+2, n, j-1)`.
fn u_to_neg_t(n: usize, u: &Matrix, neg_t: &Matrix, a: usize, b: usize) -> Sijection {
    let m = n - 1;
    let nn = n as i64;
    let (i, j) = (a as i64 + 1, b as i64 + 1);
    let cv = chu_vandermonde(i + 2, nn, j - 1).expect("valid parameters");
    let from_cv = move |z: (Side, Element)| match z {
        (Side::Dom, at) => {
            let (k, body) = at.at_parts();
            let p = j - k.ints()[0];
            let (s, x) = body.pair_parts();
            let x = Element::int(complement(i + p, x.ints()));
            let w = if p == i { Element::left(x) } else { x };
            (Side::Dom, SignedSet::inject(p as usize - 1, m, Element::pair(w, s.clone())))
        }
        (Side::Cod, y) => (Side::Cod, Element::left(y)),
    };
    Sijection::new(u.get(a, b).clone(), neg_t.get(a, b).clone(), format!("U→-T({i},{j})"), move |side, e| match side {
        Side::Dom => {
            let (q, inner) = SignedSet::branch(m, e).expect("U member");
            let p = q as i64 + 1;
            let (w, s) = inner.pair_parts();
            if p == i {
                if let Element::Right(_) = w {
                    return (Side::Cod, Element::right(s.clone()));
                }
            }
            let x = if p == i { w.as_left().expect("binomial part").ints() } else { w.ints() };
            let probe = Element::at(Element::int(vec![j - p]), Element::pair(s.clone(), Element::int(complement(i + p, x))));
            from_cv(cv.apply(Side::Dom, &probe))
        }
        Side::Cod => match e {
            Element::Right(s) => (Side::Dom, SignedSet::inject(i as usize - 1, m, Element::pair(unused(), (**s).clone()))),
            Element::Left(y) => from_cv(cv.apply(Side::Cod, y)),
            _ => panic!("-T member expected, found {e:?}"),
        },
    })
}

/// Entrywise `R ⇒ T` for the rows and columns given.
pub(crate) fn r_to_t_map(n: usize, r: &Matrix, t: &Matrix) -> impl Fn(usize, usize) -> Sijection {
    let (r, t) = (r.clone(), t.clone());
    move |a, b| r_to_t(n, &r, &t, a, b)
}

pub(crate) fn u_to_neg_t_map(n: usize, u: &Matrix, neg_t: &Matrix) -> impl Fn(usize, usize) -> Sijection {
    let (u, nt) = (u.clone(), neg_t.clone());
    move |a, b| u_to_neg_t(n, &u, &nt, a, b)
}

/// `det P ⇒ (-1)^{n-1} DPP_{n-1}`.
///
/// `det P ⇒ det S × det P ⇒ det(SP) ⇒ det T` entrywise, and on the other
/// side `det W ⇒ det W × det S ⇒ det(WS) ⇒ det(-T) = (-1)^{n-1} det T`,
/// with [`lgv_dpp_sij`] turning `det W` into DPPs.
pub fn from_det(n: usize) -> Result<Sijection, Error> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("from_det({n}) needs n >= 2")));
    }
    let m = n - 1;
    let sign = Sign::parity(m as i64);
    let (p, s, t, w) = (p_matrix(n), s_matrix(n), t_matrix(n), w_matrix(n));
    let neg_t = negated(&t);
    let r = s.product(&p)?;
    let u = w.product(&s)?;
    let s0 = det_s_member(n);

    let (s1, s2) = (s0.clone(), s0);
    let add_s = Sijection::relabel(
        determinant(&p),
        SignedSet::product(determinant(&s), determinant(&p)),
        "add det S",
        move |e| Element::pair(s1.clone(), e.clone()),
        |e| e.pair_parts().1.clone(),
    );
    let into_r = det_product(&s, &p)?.invert();
    let r_t = det_map(&r, &t, r_to_t_map(n, &r, &t))?;
    let pull = Sijection::same_members(determinant(&t), determinant(&neg_t).signed(sign), "det(-T) = ±det T");
    let u_t = neg_signed(det_map(&u, &neg_t, u_to_neg_t_map(n, &u, &neg_t))?.invert(), sign);
    let split = neg_signed(det_product(&w, &s)?, sign);
    let drop_s = neg_signed(
        Sijection::relabel(
            SignedSet::product(determinant(&w), determinant(&s)),
            determinant(&w),
            "drop det S",
            |e| e.pair_parts().0.clone(),
            move |e| Element::pair(e.clone(), s2.clone()),
        ),
        sign,
    );
    let paths = neg_signed(lgv_dpp_sij(n), sign);
    Ok(Sijection::chain(vec![add_s, into_r, r_t, pull, u_t, split, drop_s, paths]).named(format!("from_det({n})")))
}
