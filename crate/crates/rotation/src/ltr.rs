use patterns::{ar, c_vector, deform, gt, mu_t, t_mu, BOTH, NE, NW};
use sijection::{Element, Error, Sign, SignedSet, Sijection};
use subsets::{binom, chu_vandermonde, cv_lhs, cv_rhs};

use crate::elementary::{e_prime, f_prime, prime_target, vu_set};
use crate::prep::{members, submasks};

/// `⨆_{μ ∈ AR_{n-1}} GT(d(k, μT'))`.
pub fn ltr_left(k: &[i64], t_prime: &[i64]) -> SignedSet {
    let (k, t) = (k.to_vec(), t_prime.to_vec());
    SignedSet::indexed(ar(k.len() - 1), format!("LTR-left({k:?},{t:?})"), move |mu| {
        gt(&deform(&k, &mu_t(mu.ints(), &t)))
    })
}

/// `(k_1 + c_n(T), k_2 + c_1(T), …, k_n + c_{n-1}(T))`.
pub(crate) fn turned(k: &[i64], t: &[i64]) -> Vec<i64> {
    let n = k.len();
    let c = c_vector(n, t);
    (0..n).map(|i| k[i] + c[(i + n - 1) % n]).collect()
}

/// `⨆_{μ ∈ AR_{n-1}} GT(k_1 + c_n(T'μ), k_2 + c_1(T'μ), …, k_n + c_{n-1}(T'μ))`.
pub fn ltr_right(k: &[i64], t_prime: &[i64]) -> SignedSet {
    let (k, t) = (k.to_vec(), t_prime.to_vec());
    SignedSet::indexed(ar(k.len() - 1), format!("LTR-right({k:?},{t:?})"), move |mu| {
        gt(&turned(&k, &t_mu(&t, mu.ints())))
    })
}

// Everything below works with base = (k_1, l_2, …, l_n), l_i = k_i + c_{i-1}(T'),
// and a direction s: +1 for the E side (right), -1 for the F side (left).
#[derive(Clone)]
struct Side2 {
    base: Vec<i64>,
    s: i64,
}

impl Side2 {
    fn n(&self) -> i64 {
        self.base.len() as i64
    }

    fn letter(&self) -> &'static str {
        if self.s > 0 {
            "E"
        } else {
            "F"
        }
    }

    fn first_moved(&self, p: i64) -> Vec<i64> {
        let mut b = self.base.clone();
        b[0] -= self.s * p;
        b
    }

    // ⨆_{j=0}^{n-1} (-1)^{n-1-j} ⨆_{p=0}^{n-1-j} (-1)^p C([n-j-1],p) × X′_{n-j-1}(k_1 ∓ p, l)
    fn big_index(&self) -> SignedSet {
        let n = self.n();
        let mut labels = Vec::new();
        for j in 0..n {
            for p in 0..n - j {
                labels.push((vec![j, p], Sign::parity(n - 1 - j + p)));
            }
        }
        SignedSet::atoms(format!("LTR-{}#({n})", self.letter()), labels)
    }

    fn big_tag(&self) -> String {
        format!("LTR-{}({:?})", self.letter(), self.base)
    }

    fn big_family(&self) -> impl Fn(&Element) -> SignedSet + Send + Sync + 'static {
        let me = self.clone();
        move |t| {
            let (j, p) = (t.ints()[0], t.ints()[1]);
            let m = me.n() - 1 - j;
            let name = if me.s > 0 { "E'" } else { "F'" };
            SignedSet::product(binom(m, p), vu_set(name, &me.first_moved(p), m, me.s, 2))
        }
    }

    fn big(&self) -> SignedSet {
        SignedSet::indexed(self.big_index(), self.big_tag(), self.big_family())
    }

    // the big set after applying e_prime / f_prime in every term
    fn expanded(&self) -> Result<Sijection, Error> {
        let me = self.clone();
        let n = self.n();
        let me2 = self.clone();
        let sij = Sijection::fiberwise(
            self.big_index(),
            self.big_tag(),
            self.big_family(),
            format!("LTR-{}-expanded({:?})", self.letter(), self.base),
            move |t| {
                let (j, p) = (t.ints()[0], t.ints()[1]);
                let m = n - 1 - j;
                SignedSet::product(binom(m, p), prime_target(&me.first_moved(p), m, me.s))
            },
            move |t| {
                let (j, p) = (t.ints()[0], t.ints()[1]);
                let m = n - 1 - j;
                let k = me2.first_moved(p);
                let inner = if me2.s > 0 { e_prime(&k, m) } else { f_prime(&k, m) };
                Sijection::product(&Sijection::identity(binom(m, p)), &inner.expect("n >= 1"))
            },
        );
        Ok(sij)
    }

    // G = ⨆_{p, U ⊆ [2,n]} (-1)^{n-1+p+|U|} cv_lhs(p+1, n-1-|U|, n-p-1) × GT(k_1 ∓ p, l ± ε(U)),
    // and H the same with cv_rhs
    fn grouped_index(&self) -> SignedSet {
        let n = self.n();
        let all = ((1i64 << n) - 1) & !1;
        let mut labels = Vec::new();
        for p in 0..n {
            for u in submasks(all) {
                labels.push((vec![p, u], Sign::parity(n - 1 + p + u.count_ones() as i64)));
            }
        }
        SignedSet::atoms(format!("LTR-grouped#({n})"), labels)
    }

    fn grouped_gt(&self, p: i64, u: i64) -> SignedSet {
        let mut b = self.first_moved(p);
        for (i, x) in b.iter_mut().enumerate() {
            *x += self.s * (u >> i & 1);
        }
        gt(&b)
    }

    fn grouped(&self, rhs: bool) -> SignedSet {
        let me = self.clone();
        let n = self.n();
        let what = if rhs { "H" } else { "G" };
        SignedSet::indexed(self.grouped_index(), format!("LTR-{}-{what}({:?})", self.letter(), self.base), move |t| {
            let (p, u) = (t.ints()[0], t.ints()[1]);
            let (a, b, c) = (p + 1, n - 1 - u.count_ones() as i64, n - p - 1);
            let cv = if rhs { cv_rhs(a, b, c) } else { cv_lhs(a, b, c) };
            SignedSet::product(cv, me.grouped_gt(p, u))
        })
    }

    // V ⊇ U becomes the complement J ⊆ [n-1-|U|] of the positions of V∖U
    // among [2,n]∖U.
    fn regroup(&self) -> Sijection {
        let n = self.n();
        let outside = move |u: i64| -> Vec<i64> { (2..=n).filter(|i| u >> (i - 1) & 1 == 0).collect() };
        Sijection::relabel(
            self.big(),
            self.grouped(false),
            "regroup by (p, U)",
            move |e| {
                let (jp, x) = e.at_parts();
                let (j, p) = (jp.ints()[0], jp.ints()[1]);
                let (bars, vg) = x.pair_parts();
                let (vu, g) = vg.at_parts();
                let (vm, u) = (vu.ints()[0], vu.ints()[1]);
                let rest = outside(u);
                let set_j: Vec<i64> = (1..=rest.len() as i64)
                    .filter(|&r| (vm & !u) >> (rest[r as usize - 1] - 1) & 1 == 0)
                    .collect();
                let cv = Element::at(Element::int(vec![j]), Element::pair(Element::int(set_j), bars.clone()));
                Element::at(Element::int(vec![p, u]), Element::pair(cv, g.clone()))
            },
            move |e| {
                let (pu, x) = e.at_parts();
                let (p, u) = (pu.ints()[0], pu.ints()[1]);
                let (cv, g) = x.pair_parts();
                let (jt, jb) = cv.at_parts();
                let (set_j, bars) = jb.pair_parts();
                let rest = outside(u);
                let w = rest
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| !set_j.ints().contains(&(*r as i64 + 1)))
                    .fold(0, |m, (_, i)| m | 1 << (i - 1));
                let vu = Element::int(vec![w | u, u]);
                Element::at(Element::int(vec![jt.ints()[0], p]), Element::pair(bars.clone(), Element::at(vu, g.clone())))
            },
        )
    }

    fn apply_cv(&self) -> Sijection {
        let me = self.clone();
        let n = self.n();
        let family = |rhs: bool, me: Side2| {
            move |t: &Element| {
                let (p, u) = (t.ints()[0], t.ints()[1]);
                let (a, b, c) = (p + 1, n - 1 - u.count_ones() as i64, n - p - 1);
                let cv = if rhs { cv_rhs(a, b, c) } else { cv_lhs(a, b, c) };
                SignedSet::product(cv, me.grouped_gt(p, u))
            }
        };
        Sijection::fiberwise(
            self.grouped_index(),
            format!("LTR-{}-G({:?})", self.letter(), self.base),
            family(false, me.clone()),
            format!("LTR-{}-H({:?})", self.letter(), self.base),
            family(true, me.clone()),
            move |t| {
                let (p, u) = (t.ints()[0], t.ints()[1]);
                let cv = chu_vandermonde(p + 1, n - 1 - u.count_ones() as i64, n - p - 1).expect("a >= 1");
                Sijection::product(&cv, &Sijection::identity(me.grouped_gt(p, u)))
            },
        )
    }

    // (p, U, S) ↦ μ: positions outside U get the plain arrow, the members of
    // U ranked in S the other single arrow, the rest of U both arrows.
    fn to_rows(&self, target: SignedSet) -> Sijection {
        let n = self.n();
        let (plain, single) = if self.s > 0 { (NE, NW) } else { (NW, NE) };
        Sijection::relabel(
            self.grouped(true),
            target,
            "to arrow rows",
            move |e| {
                let (pu, x) = e.at_parts();
                let u = pu.ints()[1];
                let (set_s, g) = x.pair_parts();
                let ranked = members(u);
                let mu: Vec<i64> = (2..=n)
                    .map(|i| match ranked.iter().position(|&v| v == i) {
                        None => plain,
                        Some(r) if set_s.ints().contains(&(r as i64 + 1)) => single,
                        Some(_) => BOTH,
                    })
                    .collect();
                Element::at(Element::int(mu), g.clone())
            },
            move |e| {
                let (mu, g) = e.at_parts();
                let mu = mu.ints();
                let u = (2..=n).filter(|i| mu[*i as usize - 2] != plain).fold(0, |m, i| m | 1 << (i - 1));
                let p = mu.iter().filter(|&&c| c != single).count() as i64;
                let set_s: Vec<i64> = (2..=n)
                    .filter(|i| mu[*i as usize - 2] != plain)
                    .enumerate()
                    .filter(|(_, i)| mu[*i as usize - 2] == single)
                    .map(|(r, _)| r as i64 + 1)
                    .collect();
                Element::at(Element::int(vec![p, u]), Element::pair(Element::int(set_s), g.clone()))
            },
        )
    }

    fn to_side(&self, target: SignedSet) -> Sijection {
        Sijection::chain(vec![self.regroup(), self.apply_cv(), self.to_rows(target)])
    }
}

/// `ltr_left(k, T') ⇒ ltr_right(k, T')`.
///
/// Both sides are regrouped, through Chu–Vandermonde at
/// `(p+1, n-1-|U|, n-p-1)`, into signed sums of `C([n-j-1],p) × F′` and of
/// `C([n-j-1],p) × E′` terms.  Expanding these with `f_prime` and `e_prime`
/// gives the same triple sum with the roles of the two binomial factors
/// exchanged.
pub fn left_to_right(k: &[i64], t_prime: &[i64]) -> Result<Sijection, Error> {
    let n = k.len();
    if n == 0 || t_prime.len() != (n - 1) * n.saturating_sub(2) / 2 {
        return Err(Error::InvalidParameter(format!("left_to_right({k:?},{t_prime:?})")));
    }
    let c = c_vector(n - 1, t_prime);
    let mut base = k.to_vec();
    for i in 1..n {
        base[i] += c[i - 1];
    }
    let f = Side2 { base: base.clone(), s: -1 };
    let e = Side2 { base, s: 1 };
    let from_left = f.to_side(ltr_left(k, t_prime)).invert();
    let to_right = e.to_side(ltr_right(k, t_prime));
    let f_exp = f.expanded()?;
    let e_exp = e.expanded()?;
    let swap = Sijection::relabel(
        f_exp.cod().clone(),
        e_exp.cod().clone(),
        "exchange the binomial factors",
        swap_terms,
        swap_terms,
    );
    Ok(Sijection::chain(vec![from_left, f_exp, swap, e_exp.invert(), to_right])
        .named(format!("left_to_right({k:?},{t_prime:?})")))
}

// At([j,p], (A, At([i], (B, g)))) ↦ At([j,i], (B, At([p], (A, g))))
fn swap_terms(e: &Element) -> Element {
    let (jp, x) = e.at_parts();
    let (set_a, rest) = x.pair_parts();
    let (i, bg) = rest.at_parts();
    let (set_b, g) = bg.pair_parts();
    let (j, p) = (jp.ints()[0], jp.ints()[1]);
    Element::at(
        Element::int(vec![j, i.ints()[0]]),
        Element::pair(set_b.clone(), Element::at(Element::int(vec![p]), Element::pair(set_a.clone(), g.clone()))),
    )
}
