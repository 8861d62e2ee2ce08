use std::collections::HashSet;

use linalg::{cramer, det_map, det_product, determinant, solve_zero, Matrix};
use patterns::Impl;
use sijection::{Element, Error, Side, Sign, SignedSet, Sijection};
use subsets::{b_recurrence, binom, bset, chu_vandermonde};

use crate::families::{asm_set, dpp_i_set, dpp_set};
use crate::fromdet::{det_s_member, from_det, negated, p_matrix, r_to_t_map, s_matrix, t_matrix, u_to_neg_t_map};
use crate::lgv::{lgv_dpp_j_sij, unused, w_j_matrix, zero_zero};
use crate::recurrence::asm_recurrence_with;

/// A sijection between two all-positive signed sets, read as a bijection.
#[derive(Clone, Debug)]
pub struct Bijection {
    sij: Sijection,
}

impl Bijection {
    pub fn new(sij: Sijection) -> Result<Bijection, Error> {
        for side in [Side::Dom, Side::Cod] {
            if sij.set(side).counts().minus != 0 {
                return Err(Error::InvalidParameter(format!("{} has negative members", sij.set(side).describe())));
            }
        }
        Ok(Bijection { sij })
    }

    pub fn dom(&self) -> &SignedSet {
        self.sij.dom()
    }

    pub fn cod(&self) -> &SignedSet {
        self.sij.cod()
    }

    pub fn sijection(&self) -> &Sijection {
        &self.sij
    }

    pub fn forward(&self, e: &Element) -> Element {
        let (side, y) = self.sij.apply(Side::Dom, e);
        assert_eq!(side, Side::Cod, "a bijection between positive sets crosses over");
        y
    }

    pub fn backward(&self, e: &Element) -> Element {
        let (side, y) = self.sij.apply(Side::Cod, e);
        assert_eq!(side, Side::Dom, "a bijection between positive sets crosses over");
        y
    }

    /// Every member of the domain with its image, in enumeration order.
    pub fn pairs(&self) -> Vec<(Element, Element)> {
        self.dom().iter().map(|(e, _)| {
            let y = self.forward(&e);
            (e, y)
        }).collect()
    }

    /// Totality, injectivity and surjectivity on the full domain; returns
    /// the number of pairs.
    pub fn check(&self) -> Result<usize, String> {
        let mut seen = HashSet::new();
        let mut count = 0;
        for (e, _) in self.dom().iter() {
            let (side, y) = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| self.sij.apply(Side::Dom, &e)))
                .map_err(|_| format!("map panicked at {e:?}"))?;
            if side != Side::Cod || !self.cod().contains(&y) {
                return Err(format!("{e:?} is not sent into the codomain"));
            }
            if !seen.insert(y.clone()) {
                return Err(format!("{y:?} is hit twice"));
            }
            if self.sij.apply(Side::Cod, &y) != (Side::Dom, e.clone()) {
                return Err(format!("inverse disagrees at {y:?}"));
            }
            count += 1;
        }
        let total = self.cod().counts().total() as usize;
        if count != total {
            return Err(format!("{count} images for {total} codomain members"));
        }
        Ok(count)
    }
}

fn same_pair_swap(a: SignedSet, b: SignedSet, name: &str) -> Sijection {
    Sijection::relabel(SignedSet::product(a.clone(), b.clone()), SignedSet::product(b, a), name, |e| {
        let (x, y) = e.pair_parts();
        Element::pair(y.clone(), x.clone())
    }, |e| {
        let (x, y) = e.pair_parts();
        Element::pair(y.clone(), x.clone())
    })
}

/// `X_j = B_{n,1} × ASM_{n,j} ⊔ -(ASM_{n,1} × B_{n,j})`.
fn x_set(n: usize, j: i64) -> SignedSet {
    let nn = n as i64;
    SignedSet::union(
        SignedSet::product(bset(nn, 1), asm_set(n, j)),
        SignedSet::product(asm_set(n, 1), bset(nn, j)).neg(),
    )
}

// A member of row i' of the system, unpacked: the column j, the subset (or
// the [0,0] marker), which half of X_j, the fixed factor and the varying one.
struct Term {
    j: i64,
    subset: Option<Element>,
    asm_half: bool,
    fixed: Element,
    var: Element,
}

/// `⨆_{j=2}^n P_{i,j} × X_j ⇒ ∅`.  With the `j = 1` term added, the two
/// halves are `B_{n,1}` resp. `ASM_{n,1}` times the left side of the ASM
/// resp. B recurrence plus `-[0,0] × ASM_{n,i}` resp. `B_{n,i}`, which the
/// recurrences cancel; the added term cancels by swapping the halves.
fn main_row(n: usize, i: i64, p: &Matrix, xs: &[SignedSet], asm_rec: Sijection, b_rec: Sijection) -> Sijection {
    let m = n - 1;
    let a_part = SignedSet::union_all((0..m).map(|q| SignedSet::product(p.get(i as usize - 2, q).clone(), xs[q].clone())).collect());
    let p1 = binom(2 * n as i64 - i - 1, n as i64 - i);
    let b_part = SignedSet::product(p1.clone(), x_set(n, 1));

    let unpack = move |e: &Element| -> Term {
        let (j, body) = match e {
            Element::Left(a) => {
                let (q, body) = SignedSet::branch(m, a).expect("column");
                (q as i64 + 2, body)
            }
            Element::Right(b) => (1, (**b).clone()),
            _ => panic!("row member expected"),
        };
        let (pe, xe) = body.pair_parts();
        let subset = match pe {
            Element::Right(_) => None,
            Element::Left(s) if j == i => Some((**s).clone()),
            s => Some(s.clone()),
        };
        let (asm_half, inner) = match xe {
            Element::Left(x) => (true, x),
            Element::Right(x) => (false, x),
            _ => panic!("X member expected"),
        };
        let (f, v) = inner.pair_parts();
        Term { j, subset, asm_half, fixed: f.clone(), var: v.clone() }
    };
    let pack = move |t: Term| -> Element {
        let pe = match t.subset {
            None => unused(),
            Some(s) if t.j == i => Element::left(s),
            Some(s) => s,
        };
        let inner = Element::pair(t.fixed, t.var);
        let xe = if t.asm_half { Element::left(inner) } else { Element::right(inner) };
        let body = Element::pair(pe, xe);
        if t.j == 1 {
            Element::right(body)
        } else {
            Element::left(SignedSet::inject(t.j as usize - 2, m, body))
        }
    };
    let sigma = Sijection::cancel(SignedSet::union(a_part, b_part.clone()), format!("row {i}"), move |e| {
        let t = unpack(e);
        let rec = if t.asm_half { &asm_rec } else { &b_rec };
        let (side, z) = match &t.subset {
            Some(s) => rec.apply(Side::Dom, &Element::at(Element::int(vec![t.j]), Element::pair(s.clone(), t.var.clone()))),
            None => rec.apply(Side::Cod, &t.var),
        };
        let out = match side {
            Side::Dom => {
                let (j, sv) = z.at_parts();
                let (s, v) = sv.pair_parts();
                Term { j: j.ints()[0], subset: Some(s.clone()), asm_half: t.asm_half, fixed: t.fixed, var: v.clone() }
            }
            Side::Cod => Term { j: i, subset: None, asm_half: t.asm_half, fixed: t.fixed, var: z },
        };
        pack(out)
    });
    let split = Sijection::split_from_zero(&sigma);
    let added = Sijection::cancel(b_part.neg(), "swap halves", |e| {
        let (s, x) = e.pair_parts();
        let y = match x {
            Element::Left(ba) => {
                let (b, a) = ba.pair_parts();
                Element::right(Element::pair(a.clone(), b.clone()))
            }
            Element::Right(ab) => {
                let (a, b) = ab.pair_parts();
                Element::left(Element::pair(b.clone(), a.clone()))
            }
            _ => panic!("X_1 member expected"),
        };
        Element::pair(s.clone(), y)
    });
    split.then(&added).named(format!("main row {i}"))
}

fn signed_sij(s: Sijection, sign: Sign) -> Sijection {
    if sign.is_plus() {
        s
    } else {
        s.neg()
    }
}

/// [`main_bijection_with`] with the fallback `π` and `Γ`.
pub fn main_bijection(n: usize, i: usize, x: i64) -> Result<Bijection, Error> {
    main_bijection_with(n, i, x, Impl::Fallback)
}

/// `DPP_{n-1} × B_{n,1} × ASM_{n,i} → DPP_{n-1} × ASM_{n,1} × B_{n,i}`.
///
/// Row sijections `⨆_j P_{i',j} × X_j ⇒ ∅` go into [`solve_zero`], giving
/// `det P × X_i ⇒ ∅`; [`from_det`] replaces `det P` by `±DPP_{n-1}`, and
/// splitting `X_i` into its halves gives the bijection.
pub fn main_bijection_with(n: usize, i: usize, x: i64, imp: Impl) -> Result<Bijection, Error> {
    if n == 0 || i == 0 || i > n {
        return Err(Error::InvalidParameter(format!("main_bijection({n},{i})")));
    }
    let nn = n as i64;
    let dpp = dpp_set(n - 1);
    let dom = SignedSet::product_all(vec![dpp.clone(), bset(nn, 1), asm_set(n, i as i64)]);
    let cod = SignedSet::product_all(vec![dpp.clone(), asm_set(n, 1), bset(nn, i as i64)]);
    let name = format!("main_bijection({n},{i},{x})");
    if i == 1 {
        let swap = |e: &Element| {
            let (d, ba) = e.pair_parts();
            let (b, a) = ba.pair_parts();
            Element::pair(d.clone(), Element::pair(a.clone(), b.clone()))
        };
        return Bijection::new(Sijection::relabel(dom, cod, name, swap, swap));
    }
    let m = n - 1;
    let p = p_matrix(n);
    let xs: Vec<SignedSet> = (2..=nn).map(|j| x_set(n, j)).collect();
    let rows = (2..=nn)
        .map(|r| {
            let asm_rec = asm_recurrence_with(n, r as usize, x, imp)?;
            let b_rec = b_recurrence(nn, r)?;
            Ok(main_row(n, r, &p, &xs, asm_rec, b_rec))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let zeta = solve_zero(&p, &xs, &rows)?.swap_remove(i - 2);

    let sign = Sign::parity(m as i64);
    let xi = xs[i - 2].clone();
    let undet = Sijection::product(&from_det(n)?.invert(), &Sijection::identity(xi.clone()));
    let sigma = undet.then(&zeta);
    let left = SignedSet::product_all(vec![dpp.clone(), bset(nn, 1), asm_set(n, i as i64)]).signed(sign);
    let right = SignedSet::product_all(vec![dpp, asm_set(n, 1), bset(nn, i as i64)]).signed(sign);
    let halves = Sijection::relabel(
        SignedSet::union(left, right.neg()),
        sigma.dom().clone(),
        "split X_i",
        |e| match e {
            Element::Left(t) => {
                let (d, ba) = t.pair_parts();
                Element::pair(d.clone(), Element::left(ba.clone()))
            }
            Element::Right(t) => {
                let (d, ab) = t.pair_parts();
                Element::pair(d.clone(), Element::right(ab.clone()))
            }
            _ => panic!("union member expected"),
        },
        |e| {
            let (d, x) = e.pair_parts();
            match x {
                Element::Left(ba) => Element::left(Element::pair(d.clone(), ba.as_ref().clone())),
                Element::Right(ab) => Element::right(Element::pair(d.clone(), ab.as_ref().clone())),
                _ => panic!("X_i member expected"),
            }
        },
    );
    let bij = Sijection::split_from_zero(&halves.then(&sigma));
    let bij = signed_sij(bij, sign).retype(dom, cod).named(name);
    Bijection::new(bij)
}

/// `⨆_{j=2}^n -P_{i,j} × ASM_{n,j} ⇒ C([2n-i-1],n-i) × ASM_{n,1}` from the
/// ASM recurrence, whose `j = 1` term is the right-hand side.
fn asm_row(n: usize, i: i64, neg_p: &Matrix, xs: &[SignedSet], y: SignedSet, rec: Sijection) -> Sijection {
    let m = n - 1;
    let dom = SignedSet::union_all((0..m).map(|q| SignedSet::product(neg_p.get(i as usize - 2, q).clone(), xs[q].clone())).collect());
    // (j, subset or marker, ASM) ↔ member of the row or of y
    let pack = move |j: i64, s: Option<Element>, a: Element| -> (Side, Element) {
        match s {
            Some(s) if j == 1 => (Side::Cod, Element::pair(s, a)),
            Some(s) => {
                let pe = if j == i { Element::left(s) } else { s };
                (Side::Dom, SignedSet::inject(j as usize - 2, m, Element::pair(pe, a)))
            }
            None => (Side::Dom, SignedSet::inject(i as usize - 2, m, Element::pair(unused(), a))),
        }
    };
    Sijection::new(dom, y, format!("ASM row {i}"), move |side, e| {
        let (j, s, a) = match side {
            Side::Dom => {
                let (q, body) = SignedSet::branch(m, e).expect("column");
                let j = q as i64 + 2;
                let (pe, a) = body.pair_parts();
                let s = match pe {
                    Element::Right(_) => None,
                    Element::Left(s) if j == i => Some((**s).clone()),
                    s => Some(s.clone()),
                };
                (j, s, a.clone())
            }
            Side::Cod => {
                let (s, a) = e.pair_parts();
                (1, Some(s.clone()), a.clone())
            }
        };
        let (rs, z) = match s {
            Some(s) => rec.apply(Side::Dom, &Element::at(Element::int(vec![j]), Element::pair(s, a))),
            None => rec.apply(Side::Cod, &a),
        };
        match rs {
            Side::Dom => {
                let (j2, sa) = z.at_parts();
                let (s2, a2) = sa.pair_parts();
                pack(j2.ints()[0], Some(s2.clone()), a2.clone())
            }
            Side::Cod => pack(i, None, z),
        }
    })
}

/// `⨆_p S_{i,p} × C([2n-p-2], n-p-1) ⇒ [0,0]` if `i = n-1`, else `∅`, via
/// complements and Chu–Vandermonde with `(n, n, n-i-1)`.
fn column_entry(n: usize, a: usize, dom: SignedSet, cod: SignedSet) -> Sijection {
    let m = n - 1;
    let nn = n as i64;
    let i = a as i64 + 1;
    let cv = chu_vandermonde(nn, nn, nn - i - 1).expect("valid parameters");
    let comp = |m: i64, s: &[i64]| (1..=m.max(0)).filter(|x| !s.contains(x)).collect::<Vec<i64>>();
    Sijection::new(dom, cod, format!("S·Q({i})"), move |side, e| {
        let z = match side {
            Side::Dom => {
                let (q, body) = SignedSet::branch(m, e).expect("column");
                let p = q as i64 + 1;
                let (s, x) = body.pair_parts();
                let probe = Element::at(Element::int(vec![p - i]), Element::pair(s.clone(), Element::int(comp(2 * nn - p - 2, x.ints()))));
                cv.apply(Side::Dom, &probe)
            }
            Side::Cod => cv.apply(Side::Cod, &Element::int(Vec::<i64>::new())),
        };
        match z {
            (Side::Dom, at) => {
                let (k, body) = at.at_parts();
                let p = i + k.ints()[0];
                let (s, x) = body.pair_parts();
                let inner = Element::pair(s.clone(), Element::int(comp(2 * nn - p - 2, x.ints())));
                (Side::Dom, SignedSet::inject(p as usize - 1, m, inner))
            }
            (Side::Cod, _) => (Side::Cod, Element::int(vec![0, 0])),
        }
    })
}

/// Bottom row of `U^j = W^j S`: `⨆_p C([n+p-j], n-1) × S_{p,q} ⇒ [0,0]` if
/// `q = j-1`, else `∅`, via Chu–Vandermonde with `(n, n, q-j+1)`.
fn bottom_entry(n: usize, j: i64, b: usize, dom: SignedSet, cod: SignedSet) -> Sijection {
    let m = n - 1;
    let nn = n as i64;
    let q = b as i64 + 1;
    let c = q - j + 1;
    let cv = (c >= 0).then(|| chu_vandermonde(nn, nn, c).expect("valid parameters"));
    Sijection::new(dom, cod, format!("W^j·S({q})"), move |side, e| {
        let cv = cv.as_ref().expect("empty entries have no members");
        let z = match side {
            Side::Dom => {
                let (r, body) = SignedSet::branch(m, e).expect("column");
                let p = r as i64 + 1;
                let (x, s) = body.pair_parts();
                cv.apply(Side::Dom, &Element::at(Element::int(vec![q - p]), Element::pair(s.clone(), x.clone())))
            }
            Side::Cod => cv.apply(Side::Cod, &Element::int(Vec::<i64>::new())),
        };
        match z {
            (Side::Dom, at) => {
                let (k, body) = at.at_parts();
                let p = q - k.ints()[0];
                let (s, x) = body.pair_parts();
                (Side::Dom, SignedSet::inject(p as usize - 1, m, Element::pair(x.clone(), s.clone())))
            }
            (Side::Cod, _) => (Side::Cod, Element::int(vec![0, 0])),
        }
    })
}

/// [`asm_to_dpp_with`] with the fallback `π` and `Γ`.
pub fn asm_to_dpp(n: usize, i: usize, x: i64) -> Result<Bijection, Error> {
    asm_to_dpp_with(n, i, x, Impl::Fallback)
}

/// `DPP_{n-1} × ASM_{n,i} → ASM_{n,1} × DPP_{n,i}`.
///
/// Cramer's rule on the ASM recurrences gives `det(-P) × ASM_{n,i} ⇒
/// det(-P)^i`, the `i`-th column replaced by `C([2n-i'-1],n-i') ×
/// ASM_{n,1}`.  Pull `ASM_{n,1}` out, multiply by `S`: the new column
/// becomes `[0,0]` in the last row, and the other entries become those of
/// `-T`.  The same matrix, with the unit vector read as the last row
/// instead, is `W^i S` up to entrywise sijections, and `det W^i` is
/// `DPP_{n,i}` by the path involution.
pub fn asm_to_dpp_with(n: usize, i: usize, x: i64, imp: Impl) -> Result<Bijection, Error> {
    if n == 0 || i == 0 || i > n {
        return Err(Error::InvalidParameter(format!("asm_to_dpp({n},{i})")));
    }
    let nn = n as i64;
    let dom = SignedSet::product(dpp_set(n - 1), asm_set(n, i as i64));
    let cod = SignedSet::product(asm_set(n, 1), dpp_i_set(n, i));
    let name = format!("asm_to_dpp({n},{i},{x})");
    if i == 1 {
        let swap = |e: &Element| {
            let (a, b) = e.pair_parts();
            Element::pair(b.clone(), a.clone())
        };
        return Bijection::new(Sijection::relabel(dom, cod, name, swap, swap));
    }
    let m = n - 1;
    let col = i - 2;
    let sign = Sign::parity(m as i64);
    let asm1 = asm_set(n, 1);
    let ai = asm_set(n, i as i64);

    let p = p_matrix(n);
    let neg_p = negated(&p);
    let xs: Vec<SignedSet> = (2..=nn).map(|j| asm_set(n, j)).collect();
    let q_col: Vec<SignedSet> = (2..=nn).map(|r| binom(2 * nn - r - 1, nn - r)).collect();
    let ys: Vec<SignedSet> = q_col.iter().map(|c| SignedSet::product(c.clone(), asm1.clone())).collect();
    let rows = (2..=nn)
        .map(|r| {
            let rec = asm_recurrence_with(n, r as usize, x, imp)?;
            Ok(asm_row(n, r, &neg_p, &xs, ys[r as usize - 2].clone(), rec))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let solved = cramer(&neg_p, &xs, &ys, &rows)?.swap_remove(col);

    // DPP_{n-1} × ASM_{n,i} ⇒ det P × ASM_{n,i} ⇒ ±det(-P) × ASM_{n,i}
    let undet = Sijection::product(&from_det(n)?.invert(), &Sijection::identity(ai.clone()));
    let flip = Sijection::same_members(
        SignedSet::product(determinant(&p), ai.clone()),
        SignedSet::product(determinant(&neg_p), ai.clone()).signed(sign),
        "det(-P) = ±det P",
    );
    let head = signed_sij(undet.then(&flip), sign)
        .retype(dom.clone(), SignedSet::product(determinant(&neg_p), ai.clone()));

    // det(-P)^i ⇒ det M × ASM_{n,1}
    let with_y = neg_p.with_column(col, &ys);
    let mcol = neg_p.with_column(col, &q_col);
    let target_col = (col + 1) as i64;
    let factor = Sijection::relabel(
        determinant(&with_y),
        SignedSet::product(determinant(&mcol), asm1.clone()),
        "pull out ASM_{n,1}",
        move |e| {
            let (pi, cs) = e.at_parts();
            let r = pi.ints().iter().position(|&c| c == target_col).expect("permutation");
            let mut cs = cs.untuple(m).expect("components");
            let (s, a) = cs[r].pair_parts();
            let a = a.clone();
            cs[r] = s.clone();
            Element::pair(Element::at(pi.clone(), Element::tuple(cs)), a)
        },
        move |e| {
            let (d, a) = e.pair_parts();
            let (pi, cs) = d.at_parts();
            let r = pi.ints().iter().position(|&c| c == target_col).expect("permutation");
            let mut cs = cs.untuple(m).expect("components");
            cs[r] = Element::pair(cs[r].clone(), a.clone());
            Element::at(pi.clone(), Element::tuple(cs))
        },
    );
    let id1 = Sijection::identity(asm1.clone());
    let times = |s: Sijection| Sijection::product(&s, &id1);

    let s = s_matrix(n);
    let s0 = det_s_member(n);
    let s1 = s0.clone();
    let add_s = Sijection::relabel(
        determinant(&mcol),
        SignedSet::product(determinant(&s), determinant(&mcol)),
        "add det S",
        move |e| Element::pair(s1.clone(), e.clone()),
        |e| e.pair_parts().1.clone(),
    );
    let sm = s.product(&mcol)?;
    let into_sm = det_product(&s, &mcol)?.invert();

    // S·(-P) entries become -T; the replaced column becomes a unit vector
    let t = t_matrix(n);
    let neg_t = negated(&t);
    let unit = |r: usize| if r + 1 == m { zero_zero() } else { SignedSet::empty() };
    let t_col = neg_t.with_column(col, &(0..m).map(unit).collect::<Vec<_>>());
    let r = s.product(&p)?;
    let rt = r_to_t_map(n, &r, &t);
    let (sm2, tc2) = (sm.clone(), t_col.clone());
    let to_t = det_map(&sm, &t_col, move |a, b| {
        if b == col {
            column_entry(n, a, sm2.get(a, b).clone(), tc2.get(a, b).clone())
        } else {
            rt(a, b).neg().retype(sm2.get(a, b).clone(), tc2.get(a, b).clone())
        }
    })?;
    let t_row = Matrix::from_fn(m, |a, b| if a + 1 == m { if b == col { zero_zero() } else { SignedSet::empty() } } else { neg_t.get(a, b).clone() });
    let col_to_row = Sijection::same_members(determinant(&t_col), determinant(&t_row), "unit column ↔ unit row");

    let w = w_j_matrix(n, i);
    let u = w.product(&s)?;
    let w_full = crate::lgv::w_matrix(n);
    let u_full = w_full.product(&s)?;
    let ut = u_to_neg_t_map(n, &u_full, &neg_t);
    let (u2, tr2) = (u.clone(), t_row.clone());
    let from_u = det_map(&u, &t_row, move |a, b| {
        if a + 1 == m {
            bottom_entry(n, i as i64, b, u2.get(a, b).clone(), tr2.get(a, b).clone())
        } else {
            ut(a, b).retype(u2.get(a, b).clone(), tr2.get(a, b).clone())
        }
    })?
    .invert();
    let split = det_product(&w, &s)?;
    let s2 = s0;
    let drop_s = Sijection::relabel(
        SignedSet::product(determinant(&w), determinant(&s)),
        determinant(&w),
        "drop det S",
        |e| e.pair_parts().0.clone(),
        move |e| Element::pair(e.clone(), s2.clone()),
    );
    let paths = lgv_dpp_j_sij(n, i);
    let swap = same_pair_swap(dpp_i_set(n, i), asm1.clone(), "swap");

    let bij = Sijection::chain(vec![
        head,
        solved,
        factor,
        times(add_s),
        times(into_sm),
        times(to_t),
        times(col_to_row),
        times(from_u),
        times(split),
        times(drop_s),
        times(paths),
        swap,
    ]);
    Bijection::new(bij.retype(dom, cod).named(name))
}
