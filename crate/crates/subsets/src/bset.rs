use std::sync::Arc;

use sijection::{Element, Error, Side, Sign, SignedSet, Sijection};

use crate::binom::{binom, chu_vandermonde, cv_lhs, k_subsets, trinomial};

/// `B_{n,i}`: the `(2n-1)`-subsets of `[3n-2]` whose median is `n+i-1`.
pub fn bset(n: i64, i: i64) -> SignedSet {
    let median = n + i - 1;
    let mut list = Vec::new();
    if n >= 1 && (1..=n).contains(&i) {
        for below in k_subsets(median - 1, n - 1) {
            for above in k_subsets(2 * n - i - 1, n - 1) {
                let mut s = below.clone();
                s.push(median);
                s.extend(above.iter().map(|x| x + median));
                list.push((s, Sign::Plus));
            }
        }
        list.sort();
    }
    SignedSet::atoms(format!("B({n},{i})"), list)
}

/// `B_n = ⨆_i B_{n,i}`, as one sorted list.
pub fn bset_all(n: i64) -> Vec<Vec<i64>> {
    let mut all: Vec<Vec<i64>> = (1..=n).flat_map(|i| bset(n, i).elements()).map(|(e, _)| e.ints().to_vec()).collect();
    all.sort();
    all
}

/// Digit-string form used in tables, e.g. `23457`.
pub fn format_bset(s: &[i64]) -> String {
    if s.iter().all(|x| (0..10).contains(x)) {
        s.iter().map(|x| x.to_string()).collect()
    } else {
        s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// `B_{n,i} → C([n+i-2],n-1) × C([2n-i-1],n-1)`: the elements below the
/// median, and the elements above it shifted down by the median.
pub fn b_split(n: i64, i: i64) -> Result<Sijection, Error> {
    if n < 1 || !(1..=n).contains(&i) {
        return Err(Error::InvalidParameter(format!("b_split({n},{i})")));
    }
    let median = n + i - 1;
    let cod = SignedSet::product(binom(n + i - 2, n - 1), binom(2 * n - i - 1, n - 1));
    Ok(Sijection::relabel(
        bset(n, i),
        cod,
        format!("b_split({n},{i})"),
        move |e| {
            let s = e.ints();
            let k = (n - 1) as usize;
            let above: Vec<i64> = s[k + 1..].iter().map(|x| x - median).collect();
            Element::pair(Element::int(s[..k].to_vec()), Element::int(above))
        },
        move |e| {
            let (below, above) = e.pair_parts();
            let mut s = below.ints().to_vec();
            s.push(median);
            s.extend(above.ints().iter().map(|x| x + median));
            Element::int(s)
        },
    ))
}

/// `⨆_{j=1}^n (-1)^{j+1} C([2n-i-1],n-i-j+1) × B_{n,j}`; members
/// `At([j], (X, B))`.
pub fn b_recurrence_lhs(n: i64, i: i64) -> SignedSet {
    let index = SignedSet::labels(
        format!("Brec-index({n})"),
        (1..=n).map(|j| (j, Sign::parity(j + 1))).collect(),
    );
    SignedSet::indexed(index, format!("Brec({n},{i})"), move |t| {
        let j = t.ints()[0];
        SignedSet::product(binom(2 * n - i - 1, n - i - j + 1), bset(n, j))
    })
}

/// `b_recurrence_lhs(n,i) ⇒ B_{n,i}`.
///
/// Split every `B_{n,j}`, shift `j` down by one, apply the trinomial
/// bijection with `(n-i-j, n-1, j)` in each term, pull the common factor
/// `C([2n-i-1],n-1)` out, and finish with Chu–Vandermonde at `(n, n-i, n-1)`
/// and the inverse split of `B_{n,i}`.
pub fn b_recurrence(n: i64, i: i64) -> Result<Sijection, Error> {
    if n < 1 || !(1..=n).contains(&i) {
        return Err(Error::InvalidParameter(format!("b_recurrence({n},{i})")));
    }
    let lhs = b_recurrence_lhs(n, i);
    let splits: Arc<Vec<Sijection>> = Arc::new((1..=n).map(|j| b_split(n, j)).collect::<Result<_, _>>()?);
    let tris: Arc<Vec<Option<Sijection>>> = Arc::new((0..n).map(|j| trinomial(n - i - j, n - 1, j).ok()).collect());

    // At([j], (X, B)) ↦ At([j-1], (X, (Y, Z)))
    let shifted_index = SignedSet::labels(
        format!("Brec-shifted-index({n})"),
        (0..n).map(|j| (j, Sign::parity(j))).collect(),
    );
    let split_family = move |t: &Element| {
        let j = t.ints()[0];
        SignedSet::product(
            binom(2 * n - i - 1, n - i - j),
            SignedSet::product(binom(n + j - 1, n - 1), binom(2 * n - j - 2, n - 1)),
        )
    };
    let split_set = SignedSet::indexed(shifted_index.clone(), format!("Brec-split({n},{i})"), split_family);
    let splits2 = splits.clone();
    let split = Sijection::relabel(
        lhs,
        split_set.clone(),
        "split B_{n,j}",
        move |e| {
            let (t, x) = e.at_parts();
            let j = t.ints()[0];
            let (c, b) = x.pair_parts();
            let (_, parts) = splits[j as usize - 1].apply(Side::Dom, b);
            Element::at(Element::int(vec![j - 1]), Element::pair(c.clone(), parts))
        },
        move |e| {
            let (t, x) = e.at_parts();
            let j = t.ints()[0] + 1;
            let (c, parts) = x.pair_parts();
            let (_, b) = splits2[j as usize - 1].apply(Side::Cod, parts);
            Element::at(Element::int(vec![j]), Element::pair(c.clone(), b))
        },
    );

    // trinomial in each term; terms with n-i-j < 0 are empty on both sides
    let tri_family = move |t: &Element| {
        let j = t.ints()[0];
        SignedSet::product(
            binom(2 * n - i - 1, n - 1),
            SignedSet::product(binom(n - i, j), binom(2 * n - j - 2, n - 1)),
        )
    };
    let tri_set = SignedSet::indexed(shifted_index, format!("Brec-tri({n},{i})"), tri_family);
    let tris2 = tris.clone();
    let tri = Sijection::relabel(
        split_set,
        tri_set.clone(),
        "trinomial",
        move |e| {
            let (t, x) = e.at_parts();
            let j = t.ints()[0];
            let (c, yz) = x.pair_parts();
            let (y, z) = yz.pair_parts();
            let (_, bc) = tris[j as usize].as_ref().expect("non-empty term").apply(Side::Dom, &Element::pair(c.clone(), y.clone()));
            let (b, cc) = bc.pair_parts();
            Element::at(t.clone(), Element::pair(b.clone(), Element::pair(cc.clone(), z.clone())))
        },
        move |e| {
            let (t, x) = e.at_parts();
            let j = t.ints()[0];
            let (b, cz) = x.pair_parts();
            let (cc, z) = cz.pair_parts();
            let (_, ay) = tris2[j as usize].as_ref().expect("non-empty term").apply(Side::Cod, &Element::pair(b.clone(), cc.clone()));
            let (a, y) = ay.pair_parts();
            Element::at(t.clone(), Element::pair(a.clone(), Element::pair(y.clone(), z.clone())))
        },
    );

    let cv = chu_vandermonde(n, n - i, n - 1)?;
    let factored = SignedSet::product(binom(2 * n - i - 1, n - 1), cv_lhs(n, n - i, n - 1));
    let factor = Sijection::relabel(
        tri_set,
        factored,
        "factor out",
        |e| {
            let (t, x) = e.at_parts();
            let (b, rest) = x.pair_parts();
            Element::pair(b.clone(), Element::at(t.clone(), rest.clone()))
        },
        |e| {
            let (b, tx) = e.pair_parts();
            let (t, rest) = tx.at_parts();
            Element::at(t.clone(), Element::pair(b.clone(), rest.clone()))
        },
    );
    let apply_cv = Sijection::product(&Sijection::identity(binom(2 * n - i - 1, n - 1)), &cv);
    let swap = Sijection::product_comm(binom(2 * n - i - 1, n - 1), binom(n + i - 2, n - 1));
    let unsplit = b_split(n, i)?.invert();
    Ok(Sijection::chain(vec![split, tri, factor, apply_cv, swap, unsplit]).named(format!("b_recurrence({n},{i})")))
}
