use linalg::{determinant, Matrix};
use sijection::{Element, Side, Sign, SignedSet, Sijection};
use subsets::binom;

use crate::families::{dpp_i_set, dpp_set, Dpp};

/// The extra diagonal member `[0,0]`, meaning "this source is unused".
pub(crate) fn unused() -> Element {
    Element::right(Element::int(vec![0, 0]))
}

pub(crate) fn zero_zero() -> SignedSet {
    SignedSet::singleton(vec![0, 0], Sign::Plus)
}

/// `W`, of order `n-1` and indexed from 0 (`W[p][q] = W_{p+1,q+1}`).  Rows
/// `p < n-1` are `C([p+q],q-1)`, plus `[0,0]` on the diagonal.  Row `n-1`
/// only has `[0,0]` on the diagonal: a path from `(0,n)` would give parts
/// equal to `n`.
pub fn w_matrix(n: usize) -> Matrix {
    let m = n - 1;
    Matrix::from_fn(m, |a, b| {
        let (p, q) = (a as i64 + 1, b as i64 + 1);
        let base = if a + 1 < m { binom(p + q, q - 1) } else { SignedSet::empty() };
        if a == b {
            SignedSet::union(base, zero_zero())
        } else {
            base
        }
    })
}

/// `W^j`: as [`w_matrix`] but with bottom row `C([n+q-j], n-1)`.
pub fn w_j_matrix(n: usize, j: usize) -> Matrix {
    let m = n - 1;
    let w = w_matrix(n);
    Matrix::from_fn(m, |a, b| {
        if a + 1 < m {
            w.get(a, b).clone()
        } else {
            binom(n as i64 + b as i64 + 1 - j as i64, n as i64 - 1)
        }
    })
}

// Row geometry.  A path is its list of lattice points.
struct Paths {
    n: i64,
    m: usize,
    bottom: Option<i64>,
}

impl Paths {
    fn start(&self, p: usize) -> (i64, i64) {
        match self.bottom {
            Some(j) if p == self.m => (j - 2, self.n - 1),
            _ => (0, p as i64 + 1),
        }
    }

    fn is_bottom(&self, p: usize) -> bool {
        self.bottom.is_some() && p == self.m
    }

    fn diagonal_union(&self, p: usize, q: usize) -> bool {
        p == q && !self.is_bottom(p)
    }

    /// `None` for the unused marker.
    fn decode(&self, p: usize, q: usize, c: &Element) -> Option<Vec<(i64, i64)>> {
        let set = if self.diagonal_union(p, q) {
            match c {
                Element::Left(x) => x.ints().to_vec(),
                _ => return None,
            }
        } else {
            c.ints().to_vec()
        };
        let (x0, y0) = self.start(p);
        let (xe, ye) = (q as i64 - 1, 0);
        let len = (xe - x0) + (y0 - ye);
        let mut pts = vec![(x0, y0)];
        let (mut x, mut y) = (x0, y0);
        for s in 1..=len {
            let right = set.contains(&s) != self.is_bottom(p);
            if right {
                x += 1;
            } else {
                y -= 1;
            }
            pts.push((x, y));
        }
        Some(pts)
    }

    fn encode(&self, p: usize, q: usize, pts: &[(i64, i64)]) -> Element {
        let bottom = self.is_bottom(p);
        let set: Vec<i64> = pts
            .windows(2)
            .enumerate()
            .filter(|(_, w)| (w[1].0 > w[0].0) != bottom)
            .map(|(s, _)| s as i64 + 1)
            .collect();
        let e = Element::int(set);
        if self.diagonal_union(p, q) {
            Element::left(e)
        } else {
            e
        }
    }

    fn marker(&self, p: usize) -> Element {
        debug_assert!(!self.is_bottom(p));
        unused()
    }
}

type Path = Vec<(i64, i64)>;

fn swap_tails(a: &[(i64, i64)], ia: usize, b: &[(i64, i64)], ib: usize) -> (Path, Path) {
    let mut na = a[..=ia].to_vec();
    na.extend_from_slice(&b[ib + 1..]);
    let mut nb = b[..=ib].to_vec();
    nb.extend_from_slice(&a[ia + 1..]);
    (na, nb)
}

fn heights(pts: &[(i64, i64)]) -> Vec<i64> {
    pts.windows(2).filter(|w| w[1].0 > w[0].0 && w[0].1 > 0).map(|w| w[0].1).collect()
}

fn lgv(n: usize, bottom: Option<i64>, matrix: Matrix, target: SignedSet, name: String) -> Sijection {
    let m = n - 1;
    let g = Paths { n: n as i64, m, bottom };
    Sijection::new(determinant(&matrix), target, name, move |side, e| match side {
        Side::Dom => {
            let (pi, comps) = e.at_parts();
            let pi = pi.ints().to_vec();
            let comps = comps.untuple(m).expect("one component per row");
            let paths: Vec<Option<Vec<(i64, i64)>>> =
                (0..m).map(|r| g.decode(r + 1, pi[r] as usize, &comps[r])).collect();
            // smallest source meeting another path, at its first shared point
            let hit = (0..m).find_map(|a| {
                let pa = paths[a].as_ref()?;
                pa.iter().enumerate().find_map(|(ia, pt)| {
                    (0..m).filter(|&b| b != a).find_map(|b| {
                        let pb = paths[b].as_ref()?;
                        pb.iter().position(|x| x == pt).map(|ib| (a, ia, b, ib))
                    })
                })
            });
            match hit {
                Some((a, ia, b, ib)) => {
                    let (na, nb) = swap_tails(paths[a].as_ref().unwrap(), ia, paths[b].as_ref().unwrap(), ib);
                    let mut sigma = pi.clone();
                    sigma.swap(a, b);
                    let mut cs = comps.clone();
                    cs[a] = g.encode(a + 1, sigma[a] as usize, &na);
                    cs[b] = g.encode(b + 1, sigma[b] as usize, &nb);
                    (Side::Dom, Element::at(Element::int(sigma), Element::tuple(cs)))
                }
                None => {
                    assert!(pi.iter().enumerate().all(|(r, &c)| c == r as i64 + 1), "non-intersecting family with π ≠ id");
                    let mut rows = Vec::new();
                    for r in (0..m).rev() {
                        if let Some(pts) = &paths[r] {
                            let lead = if g.is_bottom(r + 1) { vec![n as i64; bottom.unwrap() as usize - 1] } else { vec![r as i64 + 2] };
                            let mut row = lead;
                            row.extend(heights(pts));
                            rows.push(row);
                        }
                    }
                    (Side::Cod, Dpp { rows }.element())
                }
            }
        }
        Side::Cod => {
            let d = Dpp::from_element(e);
            let mut comps: Vec<Option<Element>> = vec![None; m];
            for row in &d.rows {
                let (p, skip) = if row[0] == n as i64 {
                    (m, bottom.expect("parts equal to n only with a bottom row") as usize - 1)
                } else {
                    (row[0] as usize - 1, 1)
                };
                let (x0, y0) = g.start(p);
                let rest = &row[skip..];
                let mut pts = vec![(x0, y0)];
                let (mut x, mut y) = (x0, y0);
                while y > 0 {
                    for _ in rest.iter().filter(|&&h| h == y) {
                        x += 1;
                        pts.push((x, y));
                    }
                    y -= 1;
                    pts.push((x, y));
                }
                while x < p as i64 - 1 {
                    x += 1;
                    pts.push((x, y));
                }
                comps[p - 1] = Some(g.encode(p, p, &pts));
            }
            let comps: Vec<Element> = comps.into_iter().enumerate().map(|(r, c)| c.unwrap_or_else(|| g.marker(r + 1))).collect();
            let id: Vec<i64> = (1..=m as i64).collect();
            (Side::Dom, Element::at(Element::int(id), Element::tuple(comps)))
        }
    })
}

/// `det W ⇒ DPP_{n-1}` by the Lindström–Gessel–Viennot involution.
///
/// Row `p` of `W` is a path from `(0, p+1)` to `(q-1, 0)`, the subset
/// giving the positions of its right steps.  A family that meets itself is
/// sent to the family with the tails swapped at the first shared point of
/// the smallest source that meets another path.  The others have `π = id`
/// and read as a DPP: row `p` is `p+1` followed by the heights of the right
/// steps above the axis, top path first.
pub fn lgv_dpp_sij(n: usize) -> Sijection {
    assert!(n >= 2, "W needs n >= 2");
    lgv(n, None, w_matrix(n), dpp_set(n - 1), format!("lgv({n})"))
}

/// `det W^j ⇒ DPP_{n,j}` for `j >= 2`.  The bottom row is a path from
/// `(j-2, n-1)` to `(q-1, 0)` encoded by its down steps; it stands for the
/// row of the DPP with `j-1` leading parts equal to `n`.
pub fn lgv_dpp_j_sij(n: usize, j: usize) -> Sijection {
    assert!(n >= 2 && (2..=n).contains(&j), "W^j needs 2 <= j <= n");
    lgv(n, Some(j as i64), w_j_matrix(n, j), dpp_i_set(n, j), format!("lgv({n},{j})"))
}
