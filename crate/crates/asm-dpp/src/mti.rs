use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use patterns::{interlaces, monotone_triangles, mt, mt_element, mt_i, mt_rows, mt_sign, mt_upper_i};
use sijection::{Element, Error, Side, Sign, SignedSet, Sijection};
use subsets::binom;

/// `⨆_{j=0}^{i-1} (-1)^j C([i-1],j) × MT(k_1+j+1, k_2, …, k_n)`; members
/// `At([j], (A, T))`.
pub fn mti_target(k: &[i64], i: usize) -> SignedSet {
    target(k, i, false)
}

/// `⨆_{j=0}^{i-1} (-1)^j C([i-1],j) × MT(k_1, …, k_{n-1}, k_n-j-1)`.
pub fn mti_upper_target(k: &[i64], i: usize) -> SignedSet {
    target(k, i, true)
}

fn target(k: &[i64], i: usize, upper: bool) -> SignedSet {
    let index = SignedSet::labels(format!("MTi-index({i})"), (0..i as i64).map(|j| (j, Sign::parity(j))).collect());
    let k = k.to_vec();
    let tag = if upper { format!("MTi-upper-target({k:?},{i})") } else { format!("MTi-target({k:?},{i})") };
    SignedSet::indexed(index, tag, move |t| {
        let j = t.ints()[0];
        SignedSet::product(binom(i as i64 - 1, j), mt(&moved(&k, j, upper)))
    })
}

fn moved(k: &[i64], j: i64, upper: bool) -> Vec<i64> {
    let mut b = k.to_vec();
    if upper {
        *b.last_mut().unwrap() -= j + 1;
    } else {
        b[0] += j + 1;
    }
    b
}

fn check(k: &[i64], i: usize) -> Result<(), Error> {
    if k.is_empty() || i == 0 || k.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter(format!("mti({k:?},{i})")));
    }
    Ok(())
}

fn with_bottom(top: &[Vec<i64>], bottom: Vec<i64>) -> Element {
    let mut rows = top.to_vec();
    rows.push(bottom);
    mt_element(&rows)
}

fn toggled(a: &[i64], v: i64) -> Vec<i64> {
    let mut out: Vec<i64> = a.iter().copied().filter(|&x| x != v).collect();
    if out.len() == a.len() {
        out.push(v);
        out.sort_unstable();
    }
    out
}

type Key = (Vec<i64>, usize);

/// `MT_i(k) ⇒ mti_target(k, i)`, by induction on `n` and `i`.
///
/// `i = 1` shifts the first bottom entry.  Otherwise the triangle is split
/// at its second-to-last row `r = (k_1, l_2, …)`, the induction hypothesis
/// turns `MT_{i-1}(r)` into terms `C([i-2],p) × MT(k_1+p+1, l_2, …)`, and a
/// final step matches these with the target, cancelling the rest by
/// toggling `i-1` in the subset.
pub fn mti_sij(k: &[i64], i: usize) -> Result<Sijection, Error> {
    check(k, i)?;
    static CACHE: OnceLock<Mutex<HashMap<Key, Sijection>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&(k.to_vec(), i)) {
        return Ok(s.clone());
    }
    let s = build(k, i).named(format!("mti({k:?},{i})"));
    cache.lock().unwrap().insert((k.to_vec(), i), s.clone());
    Ok(s)
}

fn build(k: &[i64], i: usize) -> Sijection {
    let n = k.len();
    let k1 = k[0];
    if i == 1 {
        let up = moved(k, 0, false);
        return Sijection::relabel(
            mt_i(k, 1),
            mti_target(k, 1),
            "shift k_1",
            move |e| {
                let rows = mt_rows(e);
                let t = with_bottom(&rows[..n - 1], up.clone());
                Element::at(Element::int(vec![0]), Element::pair(Element::int(Vec::<i64>::new()), t))
            },
            {
                let k = k.to_vec();
                move |e| {
                    let (_, at) = e.at_parts();
                    let rows = mt_rows(at.pair_parts().1);
                    with_bottom(&rows[..n - 1], k.clone())
                }
            },
        );
    }
    let last = i as i64 - 1;
    let kv = k.to_vec();
    if n == 1 {
        return Sijection::new(mt_i(k, i), mti_target(k, i), "toggle i-1", move |side, e| {
            assert_eq!(side, Side::Cod, "MT_i of a single row is empty for i > 1");
            let (_, at) = e.at_parts();
            let a = toggled(at.pair_parts().0.ints(), last);
            let j = a.len() as i64;
            let t = mt_element(&[moved(&kv, j, false)]);
            (Side::Cod, Element::at(Element::int(vec![j]), Element::pair(Element::int(a), t)))
        });
    }

    // second-to-last rows r = (k_1, l_2, …, l_{n-1}) with sign c(r, k)
    let mut rows_above: Vec<(Vec<i64>, Sign)> = monotone_triangles(k)
        .into_iter()
        .map(|t| t[n - 2].clone())
        .filter(|r| r[0] == k1 && interlaces(r, k))
        .map(|r| {
            let c = mt_sign(&[r.clone(), k.to_vec()]) * mt_sign(std::slice::from_ref(&r));
            (r, c)
        })
        .collect();
    rows_above.sort();
    rows_above.dedup();
    let index = SignedSet::atoms(format!("MTi-rows({kv:?})"), rows_above);

    let split_tag = format!("MTi-split({kv:?},{i})");
    let mid_tag = format!("MTi-mid({kv:?},{i})");
    let split_family = move |t: &Element| mt_i(t.ints(), i - 1);
    let mid_family = move |t: &Element| mti_target(t.ints(), i - 1);
    let kk = kv.clone();
    let split = Sijection::relabel(
        mt_i(k, i),
        SignedSet::indexed(index.clone(), split_tag.clone(), split_family),
        "split off the bottom row",
        move |e| {
            let rows = mt_rows(e);
            Element::at(Element::int(rows[n - 2].clone()), mt_element(&rows[..n - 1]))
        },
        move |e| {
            let (_, t) = e.at_parts();
            with_bottom(&mt_rows(t), kk.clone())
        },
    );
    let induct = Sijection::fiberwise(index, split_tag, split_family, mid_tag, mid_family, move |t| {
        mti_sij(t.ints(), i - 1).expect("rows above a weakly increasing row are weakly increasing")
    });

    // (x, l_2, …) is the second-to-last row, x = k_1+p+1
    let kv2 = kv.clone();
    let first_case = move |x: i64, l2: Option<i64>| x < kv2[1] || (x == kv2[1] && l2.is_none_or(|l| x < l));
    let kv3 = kv.clone();
    let finish = Sijection::new(induct.cod().clone(), mti_target(k, i), "match the bottom row", move |side, e| {
        match side {
            Side::Dom => {
                let (_, inner) = e.at_parts();
                let (pt, bt) = inner.at_parts();
                let p = pt.ints()[0];
                let (b, t) = bt.pair_parts();
                let top = mt_rows(t);
                let s = top.last().unwrap();
                let (j, a) = if first_case(s[0], s.get(1).copied()) {
                    (p, b.ints().to_vec())
                } else {
                    (p + 1, toggled(b.ints(), last))
                };
                let out = with_bottom(&top, moved(&kv3, j, false));
                (Side::Cod, Element::at(Element::int(vec![j]), Element::pair(Element::int(a), out)))
            }
            Side::Cod => {
                let (_, inner) = e.at_parts();
                let (a, t) = inner.pair_parts();
                let a = a.ints();
                let rows = mt_rows(t);
                let top = &rows[..n - 1];
                let s = top.last().unwrap();
                let p = s[0] - k1 - 1;
                let has = a.contains(&last);
                let matched = if first_case(s[0], s.get(1).copied()) {
                    (a.len() as i64 == p && !has).then(|| a.to_vec())
                } else {
                    (a.len() as i64 == p + 1 && has).then(|| toggled(a, last))
                };
                match matched {
                    Some(b) => {
                        let mut r = s.clone();
                        r[0] = k1;
                        let inner = Element::at(Element::int(vec![p]), Element::pair(Element::int(b), mt_element(top)));
                        (Side::Dom, Element::at(Element::int(r), inner))
                    }
                    None => {
                        let a2 = toggled(a, last);
                        let j = a2.len() as i64;
                        let out = with_bottom(top, moved(&kv3, j, false));
                        (Side::Cod, Element::at(Element::int(vec![j]), Element::pair(Element::int(a2), out)))
                    }
                }
            }
        }
    });
    Sijection::chain(vec![split, induct, finish])
}

fn mirror_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    rows.iter().map(|r| r.iter().rev().map(|x| -x).collect()).collect()
}

fn mirror(e: &Element) -> Element {
    mt_element(&mirror_rows(&mt_rows(e)))
}

/// `MT^i(k) ⇒ mti_upper_target(k, i)`: [`mti_sij`] conjugated by reversing
/// and negating every row, which sends `MT^i(k)` to `MT_i(-k_n, …, -k_1)`.
pub fn mti_upper_sij(k: &[i64], i: usize) -> Result<Sijection, Error> {
    check(k, i)?;
    let star: Vec<i64> = k.iter().rev().map(|x| -x).collect();
    let inner = mti_sij(&star, i)?;
    let there = Sijection::relabel(mt_upper_i(k, i), mt_i(&star, i), "mirror", mirror, mirror);
    let swap = |e: &Element| {
        let (j, at) = e.at_parts();
        let (a, t) = at.pair_parts();
        Element::at(j.clone(), Element::pair(a.clone(), mirror(t)))
    };
    let back = Sijection::relabel(mti_target(&star, i), mti_upper_target(k, i), "mirror back", swap, swap);
    Ok(Sijection::chain(vec![there, inner, back]).named(format!("mti_upper({k:?},{i})")))
}
