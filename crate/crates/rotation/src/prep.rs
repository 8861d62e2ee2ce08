use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use sijection::{Element, Side, Sign, SignedSet, Sijection};
use subsets::k_subsets;

/// One term of a signed union of boxes: a product of signed intervals.
#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub label: Vec<i64>,
    pub sign: Sign,
    pub factors: Vec<(i64, i64)>,
}

pub(crate) fn mask(set: &[i64]) -> i64 {
    set.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

pub(crate) fn members(mask: i64) -> Vec<i64> {
    (1..63).filter(|i| mask >> (i - 1) & 1 == 1).collect()
}

pub(crate) fn submasks(m: i64) -> Vec<i64> {
    let mut out = vec![0];
    let mut s = m;
    while s != 0 {
        out.push(s);
        s = (s - 1) & m;
    }
    out.sort_unstable();
    out
}

fn eps(u: i64, i: usize) -> i64 {
    u >> (i - 1) & 1
}

fn interval_sign(a: i64, b: i64, x: i64) -> Option<Sign> {
    if a <= b {
        (a <= x && x <= b).then_some(Sign::Plus)
    } else {
        (b < x && x < a).then_some(Sign::Minus)
    }
}

impl Term {
    fn sign_at(&self, x: &[i64]) -> Option<Sign> {
        self.factors.iter().zip(x).try_fold(self.sign, |s, (&(a, b), &xi)| interval_sign(a, b, xi).map(|t| s * t))
    }
}

/// `⨆_{V ∈ C([n],j)} ⨆_{U ⊆ V} (-1)^{|U|} ∏_i [k_i + sε_i(U), k_{i+1} + sε_{i+1}(U)]`.
pub(crate) fn dom_terms(k: &[i64], j: i64, s: i64) -> Vec<Term> {
    let n = k.len();
    let mut out = Vec::new();
    for v in k_subsets(n as i64, j) {
        let vm = mask(&v);
        for u in submasks(vm) {
            let factors = (1..n).map(|i| (k[i - 1] + s * eps(u, i), k[i] + s * eps(u, i + 1))).collect();
            out.push(Term { label: vec![vm, u], sign: Sign::parity(u.count_ones() as i64), factors });
        }
    }
    out
}

// subsets of [1, m] without two consecutive elements
fn sparse_subsets(m: i64) -> Vec<Vec<i64>> {
    (0..1i64 << m.max(0))
        .filter(|x| x & (x >> 1) == 0)
        .map(members)
        .collect()
}

/// The codomain terms for `s = +1`.  The part with `I = ∅` is
/// `⨆_{V ∈ C([n-1],j)} ⨆_{U ⊆ V} (-1)^{|U|} ∏_i [k_i + ε_i(U), k_{i+1} + ε_i(U)]`;
/// the rest has a factor `{k_{i+1}+1} × {k_{i+1}}` at every `i ∈ I` and
/// carries the multiplicity `[x^{j-|V|}] (x + x²)^{|I|}`, spelled out as a
/// weight in `{1, 2}` per element of `I`.
fn cod_terms_up(k: &[i64], j: i64) -> Vec<Term> {
    let n = k.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for v in k_subsets(n as i64 - 1, j) {
        let vm = mask(&v);
        for u in submasks(vm) {
            let factors = (1..n).map(|i| (k[i - 1] + eps(u, i), k[i] + eps(u, i))).collect();
            out.push(Term { label: vec![0, vm, u, 0, 0], sign: Sign::parity(u.count_ones() as i64), factors });
        }
    }
    for set_i in sparse_subsets(n as i64 - 2) {
        if set_i.is_empty() {
            continue;
        }
        let im = mask(&set_i);
        let blocked = im | im << 1;
        let free: Vec<i64> = (1..n as i64).filter(|&p| blocked >> (p - 1) & 1 == 0).collect();
        for heavy in submasks(im) {
            let weight = set_i.len() as i64 + heavy.count_ones() as i64;
            for picks in k_subsets(free.len() as i64, j - weight) {
                let v: Vec<i64> = picks.iter().map(|&p| free[p as usize - 1]).collect();
                let vm = mask(&v);
                for u in submasks(vm) {
                    let factors = (1..n)
                        .map(|i| {
                            if eps(im, i) == 1 {
                                (k[i] + 1, k[i] + 1)
                            } else if i >= 2 && eps(im, i - 1) == 1 {
                                (k[i - 1], k[i - 1])
                            } else {
                                (k[i - 1] + eps(u, i), k[i] + eps(u, i))
                            }
                        })
                        .collect();
                    out.push(Term {
                        label: vec![1, vm, u, im, heavy],
                        sign: Sign::parity(u.count_ones() as i64),
                        factors,
                    });
                }
            }
        }
    }
    out
}

// i ↦ n - i on subsets of [n-1]
fn mirror_mask(m: i64, n: usize) -> i64 {
    mask(&members(m).iter().map(|i| n as i64 - i).collect::<Vec<_>>())
}

/// Codomain terms.  For `s = -1` these are the `s = +1` terms for
/// `(-k_n, …, -k_1)` under `x ↦ -reverse(x)`, which turns
/// `[k_m + ε, k_{m+1} + ε]` into `[k_m - ε', k_{m+1} - ε']`.
pub(crate) fn cod_terms(k: &[i64], j: i64, s: i64) -> Vec<Term> {
    if s > 0 {
        return cod_terms_up(k, j);
    }
    let n = k.len();
    let star: Vec<i64> = k.iter().rev().map(|x| -x).collect();
    cod_terms_up(&star, j)
        .into_iter()
        .map(|t| {
            let factors = t.factors.iter().rev().map(|&(a, b)| (-b, -a)).collect();
            let label = if t.label[0] == 0 {
                vec![0, mirror_mask(t.label[1], n), mirror_mask(t.label[2], n), 0, 0]
            } else {
                t.label.clone()
            };
            Term { label, sign: t.sign, factors }
        })
        .collect()
}

pub(crate) fn terms_set(tag: String, terms: &[Term]) -> SignedSet {
    let index = SignedSet::atoms(format!("{tag}#"), terms.iter().map(|t| (t.label.clone(), t.sign)).collect());
    let boxes: HashMap<Vec<i64>, Vec<(i64, i64)>> = terms.iter().map(|t| (t.label.clone(), t.factors.clone())).collect();
    SignedSet::indexed(index, tag, move |t| {
        SignedSet::product_all(boxes[t.ints()].iter().map(|&(a, b)| SignedSet::interval(a, b)).collect())
    })
}

type Fiber = HashMap<(Side, Vec<i64>), (Side, Vec<i64>)>;

// Pairs up all labels over one point: cancel within each side first, then
// match the survivors across.
fn match_fiber(dom: &[Term], cod: &[Term], x: &[i64]) -> Fiber {
    let mut table = Fiber::new();
    let mut survivors = Vec::new();
    for (side, terms) in [(Side::Dom, dom), (Side::Cod, cod)] {
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for t in terms {
            match t.sign_at(x) {
                Some(Sign::Plus) => plus.push(t.label.clone()),
                Some(Sign::Minus) => minus.push(t.label.clone()),
                None => {}
            }
        }
        plus.sort();
        minus.sort();
        let paired = plus.len().min(minus.len());
        for (a, b) in plus.iter().zip(&minus) {
            table.insert((side, a.clone()), (side, b.clone()));
            table.insert((side, b.clone()), (side, a.clone()));
        }
        let rest: Vec<(Vec<i64>, Sign)> = if plus.len() > paired {
            plus[paired..].iter().map(|l| (l.clone(), Sign::Plus)).collect()
        } else {
            minus[paired..].iter().map(|l| (l.clone(), Sign::Minus)).collect()
        };
        survivors.push(rest);
    }
    let (d, c) = (&survivors[0], &survivors[1]);
    assert!(
        d.len() == c.len() && d.iter().zip(c).all(|(a, b)| a.1 == b.1),
        "signed counts over {x:?} differ"
    );
    for ((a, _), (b, _)) in d.iter().zip(c) {
        table.insert((Side::Dom, a.clone()), (Side::Cod, b.clone()));
        table.insert((Side::Cod, b.clone()), (Side::Dom, a.clone()));
    }
    table
}

pub(crate) fn prep(k: &[i64], j: i64, s: i64) -> Sijection {
    let name = if s > 0 { "E" } else { "F" };
    let dom_t = Arc::new(dom_terms(k, j, s));
    let cod_t = Arc::new(cod_terms(k, j, s));
    let dom = terms_set(format!("prep{name}-dom({k:?},{j})"), &dom_t);
    let cod = terms_set(format!("prep{name}-cod({k:?},{j})"), &cod_t);
    let memo: Mutex<HashMap<Vec<i64>, Arc<Fiber>>> = Mutex::new(HashMap::new());
    Sijection::new(dom, cod, format!("prep{name}({k:?},{j})"), move |side, e| {
        let (t, x) = e.at_parts();
        let point = x.flatten();
        let fiber = {
            let cached = memo.lock().unwrap().get(&point).cloned();
            match cached {
                Some(f) => f,
                None => {
                    let f = Arc::new(match_fiber(&dom_t, &cod_t, &point));
                    memo.lock().unwrap().entry(point.clone()).or_insert(f).clone()
                }
            }
        };
        let (side2, label) = fiber
            .get(&(side, t.ints().to_vec()))
            .unwrap_or_else(|| panic!("{side:?} {e:?} is not a member"))
            .clone();
        (side2, Element::at(Element::int(label), x.clone()))
    })
}

/// The normal sijection from
/// `⨆_{V ∈ C([n],j)} ⨆_{U ⊆ V} (-1)^{|U|} ∏_{i<n} [k_i+ε_i(U), k_{i+1}+ε_{i+1}(U)]`
/// to the boxes described at `cod_terms_up`.
///
/// Both sides are elementary, and over every integer point they have the
/// same signed number of members.  The sijection pairs the members over each
/// point separately, so it preserves the projection.
///
/// Members are `At(label, x)`; domain labels are `[V, U]` and codomain
/// labels `[kind, V, U, I, heavy]`, all subsets as bitmasks.
pub fn prep_elementary(k: &[i64], j: i64) -> Sijection {
    prep(k, j, 1)
}

/// [`prep_elementary`] with every `ε` subtracted instead of added.
pub fn prep_elementary_f(k: &[i64], j: i64) -> Sijection {
    prep(k, j, -1)
}
