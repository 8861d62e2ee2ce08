use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use patterns::gt;
use sijection::{Element, Error, Sign, SignedSet, Sijection};
use subsets::{binom, k_subsets};

use crate::prep::{mask, prep, submasks};

fn letter(s: i64) -> &'static str {
    if s > 0 {
        "E"
    } else {
        "F"
    }
}

fn shifted(k: &[i64], u: i64, s: i64) -> Vec<i64> {
    k.iter().enumerate().map(|(i, x)| x + s * (u >> i & 1)).collect()
}

/// `⨆_{V} ⨆_{U ⊆ V} (-1)^{|U|} GT(k + sε(U))` over the `j`-subsets `V` of
/// `{first, …, n}`; members `At([V, U], g)` with bitmask labels.
pub(crate) fn vu_set(name: &str, k: &[i64], j: i64, s: i64, first: i64) -> SignedSet {
    let n = k.len() as i64;
    let mut labels = Vec::new();
    for v in k_subsets(n - first + 1, j) {
        let vm = mask(&v.iter().map(|x| x + first - 1).collect::<Vec<_>>());
        for u in submasks(vm) {
            labels.push((vec![vm, u], Sign::parity(u.count_ones() as i64)));
        }
    }
    let k = k.to_vec();
    SignedSet::indexed(
        SignedSet::atoms(format!("{name}{j}({k:?})#"), labels),
        format!("{name}{j}({k:?})"),
        move |t| gt(&shifted(&k, t.ints()[1], s)),
    )
}

/// `E_j(k) = ⨆_{V ∈ C([n],j)} ⨆_{U ⊆ V} (-1)^{|U|} GT(k + ε(U))`.
pub fn e_set(k: &[i64], j: i64) -> SignedSet {
    vu_set("E", k, j, 1, 1)
}

/// `F_j(k)`: as [`e_set`] with `k - ε(U)`.
pub fn f_set(k: &[i64], j: i64) -> SignedSet {
    vu_set("F", k, j, -1, 1)
}

/// `E′_j(k)`: as [`e_set`] with `V ⊆ {2, …, n}`.
pub fn e_prime_set(k: &[i64], j: i64) -> SignedSet {
    vu_set("E'", k, j, 1, 2)
}

pub fn f_prime_set(k: &[i64], j: i64) -> SignedSet {
    vu_set("F'", k, j, -1, 2)
}

fn tuple(xs: &[i64]) -> Element {
    Element::tuple(xs.iter().map(|&x| Element::int(vec![x])).collect())
}

fn intervals(k: &[i64]) -> SignedSet {
    SignedSet::product_all(k.windows(2).map(|w| SignedSet::interval(w[0], w[1])).collect())
}

type Cache = OnceLock<Mutex<HashMap<(Vec<i64>, i64, i64), Sijection>>>;

fn cached(cache: &'static Cache, key: (Vec<i64>, i64, i64), build: impl FnOnce() -> Result<Sijection, Error>) -> Result<Sijection, Error> {
    let map = cache.get_or_init(Default::default);
    if let Some(s) = map.lock().unwrap().get(&key) {
        return Ok(s.clone());
    }
    let s = build()?;
    Ok(map.lock().unwrap().entry(key).or_insert(s).clone())
}

fn zero(k: &[i64], j: i64, s: i64) -> Result<Sijection, Error> {
    if j < 1 {
        return Err(Error::InvalidParameter(format!("{}_j needs j >= 1, got {j}", letter(s))));
    }
    static CACHE: Cache = OnceLock::new();
    cached(&CACHE, (k.to_vec(), j, s), || Ok(build_zero(k, j, s)))
}

// E_j(k) ≈ ⨆ over the prep domain ⇒ ⨆ over the prep codomain
// ≈ ⨆_{l ∈ ∏[k_i, k_{i+1}]} E_j(l) ⇒ ∅, the middle step along prep_elementary
// and the last by recursion on n; the codomain terms with I ≠ ∅ have no
// members since GT(y) = ∅ when y_i = y_{i+1} + 1.
fn build_zero(k: &[i64], j: i64, s: i64) -> Sijection {
    let name = letter(s);
    let n = k.len();
    let set = vu_set(name, k, j, s, 1);
    if j as usize > n {
        return Sijection::vanishing(set);
    }
    let nu = Sijection::normal_union_unchecked(&prep(k, j, s), format!("GT over prep{name}({k:?},{j})"), gt);

    let into = Sijection::relabel(
        set,
        nu.dom().clone(),
        "onto the prep domain",
        move |e| {
            let (t, g) = e.at_parts();
            let (x, rest) = if n >= 2 { g.at_parts() } else { (g, g) };
            Element::at(Element::at(t.clone(), x.clone()), rest.clone())
        },
        move |e| {
            let (tx, rest) = e.at_parts();
            let (t, x) = tx.at_parts();
            let g = if n >= 2 { Element::at(x.clone(), rest.clone()) } else { rest.clone() };
            Element::at(t.clone(), g)
        },
    );

    let sum_tag = format!("{name}-sum({k:?},{j})");
    let family = move |l: &Element| vu_set(name, &l.flatten(), j, s, 1);
    let sum = SignedSet::indexed(intervals(k), sum_tag.clone(), family);
    let out = Sijection::relabel(
        nu.cod().clone(),
        sum,
        "off the prep codomain",
        move |e| {
            let (cy, g) = e.at_parts();
            let (c, y) = cy.at_parts();
            let c = c.ints();
            assert_eq!(c[0], 0, "a member over a vanishing GT term");
            let l: Vec<i64> = y.flatten().iter().enumerate().map(|(i, v)| v - s * (c[2] >> i & 1)).collect();
            Element::at(tuple(&l), Element::at(Element::int(vec![c[1], c[2]]), g.clone()))
        },
        move |e| {
            let (l, tg) = e.at_parts();
            let (t, g) = tg.at_parts();
            let (vm, u) = (t.ints()[0], t.ints()[1]);
            let y = shifted(&l.flatten(), u, s);
            Element::at(Element::at(Element::int(vec![0, vm, u, 0, 0]), tuple(&y)), g.clone())
        },
    );

    let recurse = Sijection::fiberwise(
        intervals(k),
        sum_tag,
        family,
        format!("∅-sum({k:?})"),
        |_| SignedSet::empty(),
        move |l| zero(&l.flatten(), j, s).expect("j >= 1"),
    );
    let vanish = Sijection::vanishing(recurse.cod().clone());
    Sijection::chain(vec![into, nu, out, recurse, vanish]).named(format!("{name}_zero({k:?},{j})"))
}

/// `E_j(k) ⇒ ∅` for `j >= 1`.
pub fn e_zero(k: &[i64], j: i64) -> Result<Sijection, Error> {
    zero(k, j, 1)
}

/// `F_j(k) ⇒ ∅` for `j >= 1`.
pub fn f_zero(k: &[i64], j: i64) -> Result<Sijection, Error> {
    zero(k, j, -1)
}

pub(crate) fn prime_target(k: &[i64], j: i64, s: i64) -> SignedSet {
    let name = letter(s);
    let k = k.to_vec();
    SignedSet::indexed(
        SignedSet::labels(format!("{name}'-target#({j})"), (0..=j).map(|i| (i, Sign::parity(j - i))).collect()),
        format!("{name}'-target({k:?},{j})"),
        move |t| {
            let i = t.ints()[0];
            let mut l = k.clone();
            l[0] += s * i;
            SignedSet::product(binom(j, i), gt(&l))
        },
    )
}

/// `⨆_{i=0}^j (-1)^{j-i} C([j],i) × GT(k_1+i, k_2, …, k_n)`; members
/// `At([i], (A, g))`.
pub fn e_prime_target(k: &[i64], j: i64) -> SignedSet {
    prime_target(k, j, 1)
}

/// As [`e_prime_target`] with `k_1 - i`.
pub fn f_prime_target(k: &[i64], j: i64) -> SignedSet {
    prime_target(k, j, -1)
}

fn prime(k: &[i64], j: i64, s: i64) -> Result<Sijection, Error> {
    if k.is_empty() || j < 0 {
        return Err(Error::InvalidParameter(format!("{}′_{j}({k:?})", letter(s))));
    }
    static CACHE: Cache = OnceLock::new();
    cached(&CACHE, (k.to_vec(), j, s), || build_prime(k, j, s))
}

// E_j(k) splits by whether 1 ∉ V, 1 ∈ U or 1 ∈ V∖U into
// E′_j(k) ⊔ -E′_{j-1}(k_1+1, …) ⊔ E′_{j-1}(k); the zero sijection turns this
// into E′_j(k) ⇒ E′_{j-1}(k_1+1, …) ⊔ -E′_{j-1}(k).  Induction and Pascal's
// rule on C([j],i) by whether j ∈ A finish it.
fn build_prime(k: &[i64], j: i64, s: i64) -> Result<Sijection, Error> {
    let name = format!("{}'", letter(s));
    let own = vu_set(&name, k, j, s, 2);
    if j == 0 {
        return Ok(Sijection::relabel(
            own,
            prime_target(k, 0, s),
            format!("{name}0({k:?})"),
            |e| {
                let (_, g) = e.at_parts();
                Element::at(Element::int(vec![0]), Element::pair(Element::unit(), g.clone()))
            },
            |e| {
                let (_, ag) = e.at_parts();
                Element::at(Element::int(vec![0, 0]), ag.pair_parts().1.clone())
            },
        ));
    }
    let mut up = k.to_vec();
    up[0] += s;
    let a = vu_set(&name, &up, j - 1, s, 2);
    let b = vu_set(&name, k, j - 1, s, 2);
    let parts = SignedSet::union(own, SignedSet::union(a.neg(), b));
    let split = Sijection::relabel(
        vu_set(letter(s), k, j, s, 1),
        parts,
        "split off position 1",
        |e| {
            let (t, g) = e.at_parts();
            let (vm, u) = (t.ints()[0], t.ints()[1]);
            let label = Element::int(vec![vm & !1, u & !1]);
            if vm & 1 == 0 {
                Element::left(e.clone())
            } else if u & 1 == 1 {
                Element::right(Element::left(Element::at(label, g.clone())))
            } else {
                Element::right(Element::right(Element::at(label, g.clone())))
            }
        },
        |e| {
            let (inner, in_u) = match e {
                Element::Left(x) => return (**x).clone(),
                Element::Right(r) => match &**r {
                    Element::Left(x) => (x, 1),
                    Element::Right(x) => (x, 0),
                    _ => unreachable!(),
                },
                _ => unreachable!(),
            };
            let (t, g) = inner.at_parts();
            let (vm, u) = (t.ints()[0], t.ints()[1]);
            Element::at(Element::int(vec![vm | 1, u | in_u]), g.clone())
        },
    );
    let sigma = split.invert().then(&zero(k, j, s)?);
    let first = Sijection::split_from_zero(&sigma);
    let second = Sijection::sum(&prime(&up, j - 1, s)?, &prime(k, j - 1, s)?.neg());
    let pascal = Sijection::relabel(
        second.cod().clone(),
        prime_target(k, j, s),
        "Pascal",
        move |e| match e {
            Element::Left(x) => {
                let (i, ag) = x.at_parts();
                let (set_a, g) = ag.pair_parts();
                let mut set_a = set_a.ints().to_vec();
                set_a.push(j);
                Element::at(Element::int(vec![i.ints()[0] + 1]), Element::pair(Element::int(set_a), g.clone()))
            }
            Element::Right(x) => (**x).clone(),
            _ => unreachable!(),
        },
        move |e| {
            let (i, ag) = e.at_parts();
            let (set_a, g) = ag.pair_parts();
            let set_a = set_a.ints();
            if set_a.last() == Some(&j) {
                let rest = Element::int(set_a[..set_a.len() - 1].to_vec());
                Element::left(Element::at(Element::int(vec![i.ints()[0] - 1]), Element::pair(rest, g.clone())))
            } else {
                Element::right(e.clone())
            }
        },
    );
    Ok(Sijection::chain(vec![first, second, pascal]).named(format!("{name}({k:?},{j})")))
}

/// `E′_j(k) ⇒ ⨆_{i=0}^j (-1)^{j-i} C([j],i) × GT(k_1+i, k_2, …, k_n)`.
pub fn e_prime(k: &[i64], j: i64) -> Result<Sijection, Error> {
    prime(k, j, 1)
}

/// `F′_j(k) ⇒ ⨆_{i=0}^j (-1)^{j-i} C([j],i) × GT(k_1-i, k_2, …, k_n)`.
pub fn f_prime(k: &[i64], j: i64) -> Result<Sijection, Error> {
    prime(k, j, -1)
}
