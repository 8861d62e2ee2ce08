use sijection::{Element, Error, Side, SignedSet, Sijection};

use crate::perm::{compose_perm, invert_perm, symmetric_group};

/// A square matrix of signed sets, indexed from 0.
#[derive(Clone, Debug)]
pub struct Matrix {
    m: usize,
    entries: Vec<SignedSet>,
}

impl Matrix {
    /// Row-major entries.
    pub fn new(m: usize, entries: Vec<SignedSet>) -> Result<Matrix, Error> {
        if entries.len() != m * m {
            return Err(Error::DimensionMismatch(entries.len(), m * m));
        }
        Ok(Matrix { m, entries })
    }

    pub fn from_fn(m: usize, f: impl Fn(usize, usize) -> SignedSet) -> Matrix {
        let entries = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| f(i, j)).collect();
        Matrix { m, entries }
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &SignedSet {
        &self.entries[i * self.m + j]
    }

    /// The matrix with column `j` replaced by `col`; other entries are shared.
    pub fn with_column(&self, j: usize, col: &[SignedSet]) -> Matrix {
        assert_eq!(col.len(), self.m);
        Matrix::from_fn(self.m, |p, q| if q == j { col[p].clone() } else { self.get(p, q).clone() })
    }

    /// Entrywise disjoint union.
    pub fn union(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(self.m, other.m));
        }
        Ok(Matrix::from_fn(self.m, |i, j| SignedSet::union(self.get(i, j).clone(), other.get(i, j).clone())))
    }

    /// `R_{i,j} = ⨆_p P_{i,p} × Q_{p,j}`; members of `R_{i,j}` are
    /// `SignedSet::inject(p, m, (a, b))`.
    pub fn product(&self, other: &Matrix) -> Result<Matrix, Error> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch(self.m, other.m));
        }
        let m = self.m;
        Ok(Matrix::from_fn(m, |i, j| {
            SignedSet::union_all((0..m).map(|p| SignedSet::product(self.get(i, p).clone(), other.get(p, j).clone())).collect())
        }))
    }

    pub fn sizes(&self) -> Vec<Vec<i64>> {
        (0..self.m).map(|i| (0..self.m).map(|j| self.get(i, j).size()).collect()).collect()
    }

    fn tag(&self) -> String {
        let rows: Vec<String> = (0..self.m)
            .map(|i| (0..self.m).map(|j| self.get(i, j).describe()).collect::<Vec<_>>().join("; "))
            .collect();
        format!("[{}]", rows.join(" | "))
    }
}

/// `det P = ⨆_{π ∈ 𝔖_m} P_{1,π(1)} × ⋯ × P_{m,π(m)}`; members are
/// `At(π, (c_1, …, c_m))` with `π` in one-line notation.
pub fn determinant(p: &Matrix) -> SignedSet {
    let rows = p.clone();
    SignedSet::indexed(symmetric_group(p.m), format!("det{}", p.tag()), move |t| {
        SignedSet::product_all(t.ints().iter().enumerate().map(|(i, &c)| rows.get(i, c as usize - 1).clone()).collect())
    })
}

/// `det A ⇒ det B` from entrywise sijections `A_{i,j} ⇒ B_{i,j}`, applied
/// componentwise in every term.
pub fn det_map(a: &Matrix, b: &Matrix, entry: impl Fn(usize, usize) -> Sijection) -> Result<Sijection, Error> {
    if a.m != b.m {
        return Err(Error::DimensionMismatch(a.m, b.m));
    }
    let m = a.m;
    let mut maps = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let f = entry(i, j);
            if !f.dom().same(a.get(i, j)) {
                return Err(Error::MiddleMismatch(f.dom().describe(), a.get(i, j).describe()));
            }
            if !f.cod().same(b.get(i, j)) {
                return Err(Error::MiddleMismatch(f.cod().describe(), b.get(i, j).describe()));
            }
            maps.push(f);
        }
    }
    let (ra, rb) = (a.clone(), b.clone());
    Ok(Sijection::fiberwise(
        symmetric_group(m),
        format!("det{}", a.tag()),
        move |t| SignedSet::product_all(t.ints().iter().enumerate().map(|(i, &c)| ra.get(i, c as usize - 1).clone()).collect()),
        format!("det{}", b.tag()),
        move |t| SignedSet::product_all(t.ints().iter().enumerate().map(|(i, &c)| rb.get(i, c as usize - 1).clone()).collect()),
        move |t| Sijection::product_all(t.ints().iter().enumerate().map(|(i, &c)| maps[i * m + c as usize - 1].clone()).collect()),
    )
    .named(format!("det_map({m})")))
}

fn swap_entries(p: &[i64], i: usize, j: usize) -> Vec<i64> {
    let mut s = p.to_vec();
    s.swap(i, j);
    s
}

/// `det(PQ) ⇒ det P × det Q`, with `PQ` as in [`Matrix::product`].
///
/// Expanding `det(PQ)` gives terms indexed by `π` and a choice of middle
/// indices `l_1, …, l_m`.  When the `l_i` repeat, the first repeated pair
/// `i < j` is exchanged in `π` together with the `Q`-components, which
/// cancels the term.  Otherwise `l` is a permutation `λ` and the term is
/// `det P` at `λ` times `det Q` at `π ∘ λ⁻¹`.
pub fn det_product(p: &Matrix, q: &Matrix) -> Result<Sijection, Error> {
    let r = p.product(q)?;
    let m = p.m;
    let dom = determinant(&r);
    let cod = SignedSet::product(determinant(p), determinant(q));
    Ok(Sijection::new(dom, cod, format!("det_product({m})"), move |side, e| match side {
        Side::Dom => {
            let (pi, rest) = e.at_parts();
            let pi = pi.ints();
            let comps = rest.untuple(m).expect("row components");
            let mut l = Vec::with_capacity(m);
            let mut a = Vec::with_capacity(m);
            let mut b = Vec::with_capacity(m);
            for c in &comps {
                let (k, x) = SignedSet::branch(m, c).expect("middle index");
                let (x1, x2) = x.pair_parts();
                l.push(k);
                a.push(x1.clone());
                b.push(x2.clone());
            }
            let repeat = (0..m).find_map(|i| (i + 1..m).find(|&j| l[j] == l[i]).map(|j| (i, j)));
            match repeat {
                Some((i, j)) => {
                    b.swap(i, j);
                    let sigma = swap_entries(pi, i, j);
                    let comps = (0..m).map(|t| SignedSet::inject(l[t], m, Element::pair(a[t].clone(), b[t].clone()))).collect();
                    (Side::Dom, Element::at(Element::int(sigma), Element::tuple(comps)))
                }
                None => {
                    let lambda: Vec<i64> = l.iter().map(|&k| k as i64 + 1).collect();
                    let lambda_inv = invert_perm(&lambda);
                    let rho = compose_perm(pi, &lambda_inv);
                    let qs = lambda_inv.iter().map(|&t| b[t as usize - 1].clone()).collect();
                    let left = Element::at(Element::int(lambda), Element::tuple(a));
                    let right = Element::at(Element::int(rho), Element::tuple(qs));
                    (Side::Cod, Element::pair(left, right))
                }
            }
        }
        Side::Cod => {
            let (left, right) = e.pair_parts();
            let (lambda, a) = left.at_parts();
            let (rho, qs) = right.at_parts();
            let lambda = lambda.ints();
            let a = a.untuple(m).expect("det P member");
            let qs = qs.untuple(m).expect("det Q member");
            let pi = compose_perm(rho.ints(), lambda);
            let comps = (0..m)
                .map(|i| {
                    let k = lambda[i] as usize - 1;
                    SignedSet::inject(k, m, Element::pair(a[i].clone(), qs[k].clone()))
                })
                .collect();
            (Side::Dom, Element::at(Element::int(pi), Element::tuple(comps)))
        }
    }))
}

/// Cramer's rule: given row sijections `⨆_q P_{i,q} × X_q ⇒ Y_i` (with the
/// union built by `SignedSet::union_all` over `q`), the sijections
/// `det P × X_j ⇒ det P^j` for every `j`, where `P^j` has column `j`
/// replaced by the `Y_i`.
pub fn cramer(p: &Matrix, xs: &[SignedSet], ys: &[SignedSet], rows: &[Sijection]) -> Result<Vec<Sijection>, Error> {
    let m = p.m;
    for len in [xs.len(), ys.len(), rows.len()] {
        if len != m {
            return Err(Error::DimensionMismatch(len, m));
        }
    }
    for i in 0..m {
        let want = SignedSet::union_all((0..m).map(|q| SignedSet::product(p.get(i, q).clone(), xs[q].clone())).collect());
        if !rows[i].dom().same(&want) {
            return Err(Error::MiddleMismatch(rows[i].dom().describe(), want.describe()));
        }
        if !rows[i].cod().same(&ys[i]) {
            return Err(Error::MiddleMismatch(rows[i].cod().describe(), ys[i].describe()));
        }
    }
    (0..m).map(|j| cramer_column(p, xs, ys, rows, j)).collect()
}

fn cramer_column(p: &Matrix, xs: &[SignedSet], ys: &[SignedSet], rows: &[Sijection], j: usize) -> Result<Sijection, Error> {
    let m = p.m;
    let col = j as i64 + 1;
    let xs_tag: Vec<String> = xs.iter().map(|x| x.describe()).collect();

    // ⨆_π sign π ⨆_q (∏_{r≠i} P_{r,π(r)}) × P_{i,q} × X_q  with  π(i) = j
    let (pm, xv) = (p.clone(), xs.to_vec());
    let expanded = SignedSet::indexed(
        symmetric_group(m),
        format!("cramer{}{}[{}]", j, p.tag(), xs_tag.join("; ")),
        move |t| {
            let pi = t.ints();
            let i = pi.iter().position(|&c| c == col).expect("permutation");
            SignedSet::union_all(
                (0..m)
                    .map(|q| {
                        let factors = (0..m)
                            .map(|r| if r == i { pm.get(i, q).clone() } else { pm.get(r, pi[r] as usize - 1).clone() })
                            .collect();
                        SignedSet::product(SignedSet::product_all(factors), xv[q].clone())
                    })
                    .collect(),
            )
        },
    );

    // det P × X_j embeds as the q = j terms; the others cancel in pairs
    let embed = Sijection::new(
        SignedSet::product(determinant(p), xs[j].clone()),
        expanded.clone(),
        format!("cramer-embed({j})"),
        move |side, e| match side {
            Side::Dom => {
                let (d, x) = e.pair_parts();
                let (pi, c) = d.at_parts();
                let body = SignedSet::inject(j, m, Element::pair(c.clone(), x.clone()));
                (Side::Cod, Element::at(pi.clone(), body))
            }
            Side::Cod => {
                let (pi, body) = e.at_parts();
                let (q, inner) = SignedSet::branch(m, body).expect("column index");
                if q == j {
                    let (c, x) = inner.pair_parts();
                    (Side::Dom, Element::pair(Element::at(pi.clone(), c.clone()), x.clone()))
                } else {
                    let pi = pi.ints();
                    let i = pi.iter().position(|&c| c == col).expect("permutation");
                    let r = pi.iter().position(|&c| c == q as i64 + 1).expect("permutation");
                    (Side::Cod, Element::at(Element::int(swap_entries(pi, i, r)), body.clone()))
                }
            }
        },
    );

    // apply the row sijection of row i = π⁻¹(j) inside each term
    let rows = rows.to_vec();
    let target = determinant(&p.with_column(j, ys));
    let through = Sijection::new(expanded, target, format!("cramer-rows({j})"), move |side, e| {
        let (pi, body) = e.at_parts();
        let i = pi.ints().iter().position(|&c| c == col).expect("permutation");
        let (mut cs, row_side, row_elem) = match side {
            Side::Dom => {
                let (q, inner) = SignedSet::branch(m, body).expect("column index");
                let (c, x) = inner.pair_parts();
                let cs = c.untuple(m).expect("row components");
                let row_elem = SignedSet::inject(q, m, Element::pair(cs[i].clone(), x.clone()));
                (cs, Side::Dom, row_elem)
            }
            Side::Cod => {
                let cs = body.untuple(m).expect("row components");
                let y = cs[i].clone();
                (cs, Side::Cod, y)
            }
        };
        match rows[i].apply(row_side, &row_elem) {
            (Side::Cod, y) => {
                cs[i] = y;
                (Side::Cod, Element::at(pi.clone(), Element::tuple(cs)))
            }
            (Side::Dom, z) => {
                let (q, inner) = SignedSet::branch(m, &z).expect("column index");
                let (c, x) = inner.pair_parts();
                cs[i] = c.clone();
                let body = SignedSet::inject(q, m, Element::pair(Element::tuple(cs), x.clone()));
                (Side::Dom, Element::at(pi.clone(), body))
            }
        }
    });
    Ok(embed.compose(&through)?.named(format!("cramer({j})")))
}

/// [`cramer`] with all `Y_i = ∅`: sijections `det P × X_j ⇒ ∅`.
pub fn solve_zero(p: &Matrix, xs: &[SignedSet], rows: &[Sijection]) -> Result<Vec<Sijection>, Error> {
    let ys: Vec<SignedSet> = rows.iter().map(|r| r.cod().clone()).collect();
    for y in &ys {
        if !y.is_void() {
            return Err(Error::MiddleMismatch(y.describe(), "∅".into()));
        }
    }
    let solved = cramer(p, xs, &ys, rows)?;
    solved
        .into_iter()
        .enumerate()
        .map(|(j, s)| {
            let zero = Sijection::vanishing(s.cod().clone());
            Ok(s.compose(&zero)?.named(format!("solve_zero({j})")))
        })
        .collect()
}
