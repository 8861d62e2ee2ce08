use patterns::{asm_to_mt, mt, mt_element, mt_i, mt_rows, mt_to_asm, mt_upper_i, Impl};
use rotation::{rot, rotate_mt_with};
use sijection::{Element, Error, Sign, SignedSet, Sijection};
use subsets::{binom, chu_vandermonde, cv_lhs, cv_rhs};

use crate::families::{asm_reflect, asm_rotate90, asm_set, Asm, Turn};
use crate::mti::{mti_sij, mti_target, mti_upper_sij, mti_upper_target};

/// `⨆_{j=1}^n (-1)^{j+1} C([2n-i-1],n-i-j+1) × ASM_{n,j}`; members
/// `At([j], (X, A))`.
pub fn asm_recurrence_lhs(n: usize, i: usize) -> SignedSet {
    let (nn, ii) = (n as i64, i as i64);
    let index = SignedSet::labels(format!("Arec-index({n})"), (1..=nn).map(|j| (j, Sign::parity(j + 1))).collect());
    SignedSet::indexed(index, format!("Arec({n},{i})"), move |t| {
        let j = t.ints()[0];
        SignedSet::product(binom(2 * nn - ii - 1, nn - ii - j + 1), asm_set(n, j))
    })
}

fn complement(m: i64, s: &[i64]) -> Vec<i64> {
    (1..=m.max(0)).filter(|x| !s.contains(x)).collect()
}

fn staircase(n: usize) -> Vec<i64> {
    (1..=n as i64).collect()
}

/// `ASM_{n,m} → MT_m(1,…,n)`: rotate counterclockwise, then read off the
/// triangle.
fn asm_to_mti(n: usize, m: i64) -> Sijection {
    let target = if m >= 1 { mt_i(&staircase(n), m as usize) } else { SignedSet::empty() };
    Sijection::relabel(
        asm_set(n, m),
        target,
        "ASM → MT_i",
        |e| mt_element(&asm_to_mt(&asm_rotate90(&Asm::from_element(e), Turn::Counterclockwise).rows)),
        |e| asm_rotate90(&Asm { rows: mt_to_asm(&mt_rows(e)) }, Turn::Clockwise).element(),
    )
}

/// `MT^i(1,…,n) → ASM_{n,i}`, undoing a reflection followed by a clockwise
/// rotation.
fn mt_upper_to_asm(n: usize, i: usize) -> Sijection {
    Sijection::relabel(
        mt_upper_i(&staircase(n), i),
        asm_set(n, i as i64),
        "MT^i → ASM",
        |e| asm_reflect(&asm_rotate90(&Asm { rows: mt_to_asm(&mt_rows(e)) }, Turn::Counterclockwise)).element(),
        |e| mt_element(&asm_to_mt(&asm_rotate90(&asm_reflect(&Asm::from_element(e)), Turn::Clockwise).rows)),
    )
}

/// [`asm_recurrence_with`] using the fallback `π`, `Γ` and `x = 0`.
pub fn asm_recurrence(n: usize, i: usize) -> Result<Sijection, Error> {
    asm_recurrence_with(n, i, 0, Impl::Fallback)
}

/// `asm_recurrence_lhs(n, i) ⇒ ASM_{n,i}`.
///
/// Reflect `ASM_{n,j}` to `ASM_{n,n+1-j}` and complement the subset, so
/// that the terms read `(-1)^{n-j-1} C([2n-i-1],j) × ASM_{n,2n-j-1}`.  Pass
/// to `MT_{2n-j-1}(1,…,n)` and apply [`mti_sij`]; regroup by `p` and use
/// Chu–Vandermonde with `(p+1, 2n-i-1, 2n-p-2)`, leaving
/// `(-1)^{n+p-1} C([i-1],p) × MT(2n-p,2,…,n)`.  Rotate, subtract 1 from
/// every entry, and finish with the inverse of [`mti_upper_sij`].
pub fn asm_recurrence_with(n: usize, i: usize, x: i64, imp: Impl) -> Result<Sijection, Error> {
    if n == 0 || i == 0 || i > n {
        return Err(Error::InvalidParameter(format!("asm_recurrence({n},{i})")));
    }
    let (nn, ii) = (n as i64, i as i64);
    let b = 2 * nn - ii - 1;
    let top = 2 * nn - 2;

    // j'' = n+j-2 runs over 0..=2n-2; terms with 2n-1-j'' > n have no ASMs
    let l1_index = SignedSet::labels(format!("Arec-L1-index({n})"), (0..=top).map(|j| (j, Sign::parity(nn + j + 1))).collect());
    let l1_tag = format!("Arec-L1({n},{i})");
    let l1_family = move |t: &Element| {
        let j = t.ints()[0];
        SignedSet::product(binom(b, j), asm_set(n, 2 * nn - 1 - j))
    };
    let reflect = |e: &Element, b: i64| {
        let (s, a) = e.pair_parts();
        Element::pair(Element::int(complement(b, s.ints())), asm_reflect(&Asm::from_element(a)).element())
    };
    let stage1 = Sijection::relabel(
        asm_recurrence_lhs(n, i),
        SignedSet::indexed(l1_index.clone(), l1_tag.clone(), l1_family),
        "reflect and complement",
        move |e| {
            let (t, body) = e.at_parts();
            let j = t.ints()[0];
            Element::at(Element::int(vec![nn + j - 2]), reflect(body, b))
        },
        move |e| {
            let (t, body) = e.at_parts();
            let j = t.ints()[0] + 2 - nn;
            Element::at(Element::int(vec![j]), reflect(body, b))
        },
    );

    let staircase_n = staircase(n);
    let l2_tag = format!("Arec-L2({n},{i})");
    let st = staircase_n.clone();
    let l2_family = move |t: &Element| {
        let j = t.ints()[0];
        SignedSet::product(binom(b, j), mti_target(&st, (2 * nn - 1 - j) as usize))
    };
    let st = staircase_n.clone();
    let stage2 = Sijection::fiberwise(l1_index, l1_tag, l1_family, l2_tag, l2_family, move |t| {
        let j = t.ints()[0];
        let m = 2 * nn - 1 - j;
        let to_mt = asm_to_mti(n, m).then(&mti_sij(&st, m as usize).expect("staircase is increasing"));
        Sijection::product(&Sijection::identity(binom(b, j)), &to_mt)
    });

    let l3_index = SignedSet::labels(format!("Arec-L3-index({n})"), (0..=top).map(|p| (p, Sign::parity(nn + p + 1))).collect());
    let l3_tag = format!("Arec-L3({n},{i})");
    let rest = move |p: i64| {
        let mut k = vec![2 + p];
        k.extend(2..=nn);
        k
    };
    let l3_family = move |t: &Element| {
        let p = t.ints()[0];
        SignedSet::product(cv_lhs(p + 1, b, 2 * nn - p - 2), mt(&rest(p)))
    };
    let stage3 = Sijection::relabel(
        stage2.cod().clone(),
        SignedSet::indexed(l3_index.clone(), l3_tag.clone(), l3_family),
        "regroup by p",
        |e| {
            let (j, body) = e.at_parts();
            let (x, inner) = body.pair_parts();
            let (p, bt) = inner.at_parts();
            let (bars, t) = bt.pair_parts();
            Element::at(p.clone(), Element::pair(Element::at(j.clone(), Element::pair(x.clone(), bars.clone())), t.clone()))
        },
        |e| {
            let (p, body) = e.at_parts();
            let (cvl, t) = body.pair_parts();
            let (j, xb) = cvl.at_parts();
            let (x, bars) = xb.pair_parts();
            Element::at(j.clone(), Element::pair(x.clone(), Element::at(p.clone(), Element::pair(bars.clone(), t.clone()))))
        },
    );

    let l4_tag = format!("Arec-L4({n},{i})");
    let l4_family = move |t: &Element| {
        let p = t.ints()[0];
        SignedSet::product(cv_rhs(p + 1, b, 2 * nn - p - 2), mt(&rest(p)))
    };
    let stage4 = Sijection::fiberwise(l3_index, l3_tag, l3_family, l4_tag, l4_family, move |t| {
        let p = t.ints()[0];
        let cv = chu_vandermonde(p + 1, b, 2 * nn - p - 2).expect("p+1 >= 1 and c >= 0");
        Sijection::product(&cv, &Sijection::identity(mt(&rest(p))))
    });

    // p' = 2n-2-p; only p' < i survives Chu–Vandermonde
    let l5_index = SignedSet::labels(format!("Arec-L5-index({n},{i})"), (0..ii).map(|p| (p, Sign::parity(nn + p + 1))).collect());
    let l5_tag = format!("Arec-L5({n},{i})");
    let before = move |p: i64| {
        let mut k = vec![2 * nn - p];
        k.extend(2..=nn);
        k
    };
    let l5_family = move |t: &Element| {
        let p = t.ints()[0];
        SignedSet::product(binom(ii - 1, p), mt(&before(p)))
    };
    let flip = move |e: &Element| {
        let (p, body) = e.at_parts();
        Element::at(Element::int(vec![top - p.ints()[0]]), body.clone())
    };
    let stage5 = Sijection::relabel(
        stage4.cod().clone(),
        SignedSet::indexed(l5_index.clone(), l5_tag.clone(), l5_family),
        "p ↦ 2n-2-p",
        flip,
        flip,
    );

    // an unavailable π/Γ should fail here, not in the middle of a chase
    rotate_mt_with(&before(0), x, imp)?;
    let sign = Sign::parity(nn - 1);
    let l6_tag = format!("Arec-L6({n},{i})");
    let l6_family = move |t: &Element| {
        let p = t.ints()[0];
        SignedSet::product(binom(ii - 1, p), mt(&rot(&before(p))).signed(sign))
    };
    let stage6 = Sijection::fiberwise(l5_index, l5_tag, l5_family, l6_tag, l6_family, move |t| {
        let p = t.ints()[0];
        let r = rotate_mt_with(&before(p), x, imp).expect("rotation of a nonempty row");
        Sijection::product(&Sijection::identity(binom(ii - 1, p)), &r)
    });

    let shift = |d: i64| {
        move |e: &Element| {
            let (p, body) = e.at_parts();
            let (s, t) = body.pair_parts();
            let t = Element::int(t.ints().iter().map(|v| v + d).collect::<Vec<_>>());
            Element::at(p.clone(), Element::pair(s.clone(), t))
        }
    };
    let stage7 = Sijection::relabel(stage6.cod().clone(), mti_upper_target(&staircase_n, i), "subtract 1", shift(-1), shift(1));
    let stage8 = mti_upper_sij(&staircase_n, i)?.invert();
    let stage9 = mt_upper_to_asm(n, i);

    Ok(Sijection::chain(vec![stage1, stage2, stage3, stage4, stage5, stage6, stage7, stage8, stage9])
        .named(format!("asm_recurrence({n},{i})")))
}
