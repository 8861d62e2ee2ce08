use sijection::{Element, Error, Side, Sign, SignedSet, Sijection};

/// All `k`-subsets of `{1..m}` in lexicographic order.  `[m]` is empty for
/// `m <= 0`; there are no subsets of negative size.
pub fn k_subsets(m: i64, k: i64) -> Vec<Vec<i64>> {
    let m = m.max(0);
    if k < 0 || k > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k as usize);
    fn rec(start: i64, m: i64, k: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() as i64 == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len() as i64;
        for x in start..=m - need + 1 {
            cur.push(x);
            rec(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(1, m, k, &mut cur, &mut out);
    out
}

/// Binomial coefficient with the conventions of [`k_subsets`].
pub fn binomial(m: i64, k: i64) -> i64 {
    let m = m.max(0);
    if k < 0 || k > m {
        return 0;
    }
    let k = k.min(m - k);
    (0..k).fold(1i64, |acc, i| acc * (m - i) / (i + 1))
}

/// The set `C([m], k)` of `k`-subsets of `[m]`, all positive; members are
/// sorted tuples.
pub fn binom(m: i64, k: i64) -> SignedSet {
    SignedSet::atoms(
        format!("C([{m}],{k})"),
        k_subsets(m, k).into_iter().map(|s| (s, Sign::Plus)).collect(),
    )
}

fn complement(m: i64, s: &[i64]) -> Vec<i64> {
    (1..=m.max(0)).filter(|x| !s.contains(x)).collect()
}

/// `C([m],k) → C([m],m-k)`, taking complements.
pub fn binom_complement(m: i64, k: i64) -> Sijection {
    let f = move |e: &Element| Element::int(complement(m, e.ints()));
    Sijection::relabel(binom(m, k), binom(m, m.max(0) - k), format!("complement({m},{k})"), f, f)
}

// positions (1-based) of the members of `sub` inside the sorted list `within`
fn positions(within: &[i64], sub: &[i64]) -> Vec<i64> {
    sub.iter()
        .map(|x| within.iter().position(|y| y == x).expect("subset") as i64 + 1)
        .collect()
}

fn pick(within: &[i64], pos: &[i64]) -> Vec<i64> {
    pos.iter().map(|p| within[*p as usize - 1]).collect()
}

/// `C([a+b+c],a) × C([b+c],b) → C([a+b+c],b) × C([a+c],c)`, sending disjoint
/// `(A, B)` to `(B, C)` with `C` the rest.  The second factor on each side
/// is a subset of the complement of the first, relabelled order-preservingly.
pub fn trinomial(a: i64, b: i64, c: i64) -> Result<Sijection, Error> {
    if a < 0 || b < 0 || c < 0 {
        return Err(Error::InvalidParameter(format!("trinomial({a},{b},{c})")));
    }
    let n = a + b + c;
    let dom = SignedSet::product(binom(n, a), binom(b + c, b));
    let cod = SignedSet::product(binom(n, b), binom(a + c, c));
    Ok(Sijection::relabel(
        dom,
        cod,
        format!("trinomial({a},{b},{c})"),
        move |e| {
            let (x, y) = e.pair_parts();
            let set_a = x.ints();
            let rest_a = complement(n, set_a);
            let set_b = pick(&rest_a, y.ints());
            let rest_b = complement(n, &set_b);
            let set_c: Vec<i64> = rest_a.iter().copied().filter(|v| !set_b.contains(v)).collect();
            Element::pair(Element::int(set_b), Element::int(positions(&rest_b, &set_c)))
        },
        move |e| {
            let (x, y) = e.pair_parts();
            let set_b = x.ints();
            let rest_b = complement(n, set_b);
            let set_c = pick(&rest_b, y.ints());
            let set_a: Vec<i64> = rest_b.iter().copied().filter(|v| !set_c.contains(v)).collect();
            let rest_a = complement(n, &set_a);
            Element::pair(Element::int(set_a), Element::int(positions(&rest_a, set_b)))
        },
    ))
}

/// Weak composition of `total` into `parts` parts ↔ `(parts-1)`-subset of
/// `[total+parts-1]`, the bars sitting at positions `π_1+…+π_i + i`.
fn bars_to_composition(bars: &[i64], total: i64, parts: usize) -> Vec<i64> {
    if parts == 0 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for &b in bars {
        out.push(b - prev - 1);
        prev = b;
    }
    out.push(total + parts as i64 - 1 - prev);
    out
}

fn composition_to_bars(pi: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(pi.len().saturating_sub(1));
    let mut acc = 0;
    for (i, p) in pi.iter().take(pi.len().saturating_sub(1)).enumerate() {
        acc += p;
        out.push(acc + i as i64 + 1);
    }
    out
}

/// `⨆_{j=0}^c (-1)^j C([b],j) × C([a+c-j-1],a-1)`; members `At([j], (J, bars))`.
pub fn cv_lhs(a: i64, b: i64, c: i64) -> SignedSet {
    let index = SignedSet::labels(
        format!("CV-index({c})"),
        (0..=c).map(|j| (j, Sign::parity(j))).collect(),
    );
    SignedSet::indexed(index, format!("CV({a},{b},{c})"), move |t| {
        let j = t.ints()[0];
        SignedSet::product(binom(b, j), binom(a + c - j - 1, a - 1))
    })
}

/// `C([a+c-b-1],c)` if `a >= b`, else `(-1)^c C([b-a],c)`.
pub fn cv_rhs(a: i64, b: i64, c: i64) -> SignedSet {
    if a >= b {
        binom(a + c - b - 1, c)
    } else {
        binom(b - a, c).signed(Sign::parity(c))
    }
}

/// The signed Chu–Vandermonde sijection `cv_lhs(a,b,c) ⇒ cv_rhs(a,b,c)`.
///
/// A member is a pair `(J, π)` with `J ⊆ [b]` and `π` a weak composition of
/// `c-|J|` into `a` parts.  Let `i` be the least index in `[min(a,b)]` with
/// `i ∈ J` or `π_i > 0`; moving one unit between `J` and `π_i` is a
/// sign-reversing involution.  Its fixed points are matched with the
/// right-hand side: for `a >= b` the tail `π_{b+1..a}` as a star set, for
/// `a < b` the set `J - a`.
pub fn chu_vandermonde(a: i64, b: i64, c: i64) -> Result<Sijection, Error> {
    if a < 1 || b < 0 || c < 0 {
        return Err(Error::InvalidParameter(format!("chu_vandermonde({a},{b},{c})")));
    }
    let dom = cv_lhs(a, b, c);
    let cod = cv_rhs(a, b, c);
    let span = a.min(b);
    let parts = a as usize;
    Ok(Sijection::new(dom, cod, format!("cv({a},{b},{c})"), move |side, e| match side {
        Side::Dom => {
            let (t, x) = e.at_parts();
            let j = t.ints()[0];
            let (js, bars) = x.pair_parts();
            let mut set_j = js.ints().to_vec();
            let mut pi = bars_to_composition(bars.ints(), c - j, parts);
            let first = (1..=span).find(|&i| set_j.contains(&i) || pi[i as usize - 1] > 0);
            match first {
                Some(i) => {
                    if let Some(p) = set_j.iter().position(|&v| v == i) {
                        set_j.remove(p);
                        pi[i as usize - 1] += 1;
                    } else {
                        set_j.push(i);
                        set_j.sort_unstable();
                        pi[i as usize - 1] -= 1;
                    }
                    let j2 = set_j.len() as i64;
                    let inner = Element::pair(Element::int(set_j), Element::int(composition_to_bars(&pi)));
                    (Side::Dom, Element::at(Element::int(vec![j2]), inner))
                }
                None if a >= b => {
                    let tail = &pi[b as usize..];
                    let stars = complement(a + c - b - 1, &composition_to_bars(tail));
                    (Side::Cod, Element::int(stars))
                }
                None => {
                    let shifted: Vec<i64> = set_j.iter().map(|v| v - a).collect();
                    (Side::Cod, Element::int(shifted))
                }
            }
        }
        Side::Cod => {
            let s = e.ints();
            let (set_j, pi) = if a >= b {
                let bars = complement(a + c - b - 1, s);
                let tail = bars_to_composition(&bars, c, (a - b) as usize);
                let mut pi = vec![0; b as usize];
                pi.extend(tail);
                (Vec::new(), pi)
            } else {
                (s.iter().map(|v| v + a).collect(), vec![0; parts])
            };
            let j = set_j.len() as i64;
            let inner = Element::pair(Element::int(set_j), Element::int(composition_to_bars(&pi)));
            (Side::Dom, Element::at(Element::int(vec![j]), inner))
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_round_trip() {
        for total in 0..4 {
            for parts in 1..4usize {
                for bars in k_subsets(total + parts as i64 - 1, parts as i64 - 1) {
                    let pi = bars_to_composition(&bars, total, parts);
                    assert_eq!(pi.iter().sum::<i64>(), total);
                    assert!(pi.iter().all(|&p| p >= 0));
                    assert_eq!(composition_to_bars(&pi), bars);
                }
            }
        }
    }

    #[test]
    fn subset_conventions() {
        assert_eq!(k_subsets(-1, 0), vec![Vec::<i64>::new()]);
        assert!(k_subsets(2, 3).is_empty());
        assert_eq!(k_subsets(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-2, 0), 1);
    }
}
