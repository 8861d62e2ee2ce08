use patterns::{ap, deform, gamma, gt, gt_shift, mt, pattern_index, pi_sij, pi_target, sgt, t_mu, Impl};
use sijection::{Element, Error, Sign, SignedSet, Sijection};

use crate::ltr::{left_to_right, ltr_left, ltr_right, turned};

/// `rot(k) = (k_2, …, k_n, k_1 - n)`.
pub fn rot(k: &[i64]) -> Vec<i64> {
    let n = k.len() as i64;
    let mut out = k[1..].to_vec();
    out.push(k[0] - n);
    out
}

// (a_2+1, …, a_n+1, a_1-n+1): where the π steps i = 1, …, n-1 take GT(a)
fn cycled(a: &[i64]) -> Vec<i64> {
    let n = a.len() as i64;
    let mut out: Vec<i64> = a[1..].iter().map(|x| x + 1).collect();
    out.push(a[0] - n + 1);
    out
}

fn pi_chain(a: &[i64], imp: Impl) -> Result<Sijection, Error> {
    let mut cur = a.to_vec();
    let mut steps = Vec::new();
    for i in 1..a.len() {
        let p = pi_sij(&cur, i, imp)?;
        steps.push(if i % 2 == 1 { p } else { p.neg() });
        cur = pi_target(&cur, i);
    }
    if steps.is_empty() {
        return Ok(Sijection::identity(gt(a)));
    }
    Ok(Sijection::chain(steps))
}

/// [`rotate_mt_with`] using the fallback `π` and `Γ`.
pub fn rotate_mt(k: &[i64], x: i64) -> Result<Sijection, Error> {
    rotate_mt_with(k, x, Impl::Fallback)
}

/// `MT(k) ⇒ (-1)^{n-1} MT(rot(k))`.
///
/// Stages: `Γ` into `SGT(k)`; split every arrow pattern into `μT'` and apply
/// [`left_to_right`] over each `T'`; reassemble as `T'μ`; move the first
/// entry of the GT bottom row to the end with `π_1, …, π_{n-1}`; shift
/// everything by `-1`, which lands in `(-1)^{n-1} SGT(rot(k))`; `Γ⁻¹`.
pub fn rotate_mt_with(k: &[i64], x: i64, imp: Impl) -> Result<Sijection, Error> {
    let n = k.len();
    if n == 0 {
        return Err(Error::InvalidParameter("rotate_mt needs n >= 1".into()));
    }
    let r = rot(k);
    let name = format!("rotate_mt({k:?},{x})");
    if n == 1 {
        let f = |e: &Element| Element::int(vec![e.ints()[0] - 1]);
        let b = |e: &Element| Element::int(vec![e.ints()[0] + 1]);
        return Ok(Sijection::relabel(mt(k), mt(&r), name, f, b));
    }
    let sign = Sign::parity(n as i64 - 1);
    let kv = k.to_vec();

    let to_sgt = gamma(k, x, imp)?;

    let left_tag = format!("ROT-left({k:?})");
    let (k1, k2, k3) = (kv.clone(), kv.clone(), kv.clone());
    let left_family = move |t: &Element| ltr_left(&k1, t.ints());
    let split = Sijection::relabel(
        sgt(k),
        SignedSet::indexed(ap(n - 1), left_tag.clone(), left_family.clone()),
        "T = μT'",
        move |e| {
            let (t, g) = e.at_parts();
            let t = t.ints();
            let (mu, rest) = t.split_at(n - 1);
            Element::at(Element::int(rest.to_vec()), Element::at(Element::int(mu.to_vec()), g.clone()))
        },
        move |e| {
            let (tp, mg) = e.at_parts();
            let (mu, g) = mg.at_parts();
            Element::at(Element::int(patterns::mu_t(mu.ints(), tp.ints())), g.clone())
        },
    );

    let right_tag = format!("ROT-right({k:?})");
    let right_family = move |t: &Element| ltr_right(&k2, t.ints());
    let ltr = Sijection::fiberwise(ap(n - 1), left_tag, left_family, right_tag, right_family, move |t| {
        left_to_right(&k3, t.ints()).expect("well-formed arrow pattern")
    });

    let (k4, k5, k6) = (kv.clone(), kv.clone(), kv.clone());
    let turned_tag = format!("ROT-turned({k:?})");
    let turned_family = move |t: &Element| gt(&turned(&k4, t.ints()));
    let join = Sijection::relabel(
        ltr.cod().clone(),
        SignedSet::indexed(ap(n), turned_tag.clone(), turned_family.clone()),
        "T'μ = T",
        move |e| {
            let (tp, mg) = e.at_parts();
            let (mu, g) = mg.at_parts();
            Element::at(Element::int(t_mu(tp.ints(), mu.ints())), g.clone())
        },
        move |e| {
            let (t, g) = e.at_parts();
            let t = t.ints();
            let mu: Vec<i64> = (1..n).map(|p| t[pattern_index(n, p, n)]).collect();
            let tp: Vec<i64> = (1..n)
                .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
                .map(|(p, q)| t[pattern_index(n, p, q)])
                .collect();
            Element::at(Element::int(tp), Element::at(Element::int(mu), g.clone()))
        },
    );

    let cycled_family = move |t: &Element| gt(&cycled(&turned(&k5, t.ints())));
    let cf = cycled_family.clone();
    let pis = Sijection::fiberwise(
        ap(n),
        turned_tag,
        turned_family,
        format!("ROT-cycled±({k:?})"),
        move |t| cf(t).signed(sign),
        move |t| pi_chain(&turned(&k6, t.ints()), imp).expect("π is available"),
    );
    let cycled_tag = format!("ROT-cycled({k:?})");
    let cycled_set = SignedSet::indexed(ap(n), cycled_tag.clone(), cycled_family.clone());
    let pull_sign = Sijection::same_members(pis.cod().clone(), cycled_set.signed(sign), "pull the sign out");

    let (k7, r1) = (kv.clone(), r.clone());
    let shift = Sijection::fiberwise(
        ap(n),
        cycled_tag,
        cycled_family,
        format!("SGT{r:?}"),
        move |t| gt(&deform(&r1, t.ints())),
        move |t| gt_shift(&cycled(&turned(&k7, t.ints())), -1),
    );
    let shift = if sign.is_plus() { shift } else { shift.neg() };

    let back = gamma(&r, x, imp)?.invert();
    let back = if sign.is_plus() { back } else { back.neg() };

    Ok(Sijection::chain(vec![to_sgt, split, ltr, join, pis, pull_sign, shift, back]).named(name))
}
