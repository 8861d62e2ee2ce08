use sijection::{Element, Side, SignedSet, Sijection};

/// `α_{a,b,c} : [a,c] ⇒ [a,b] ⊔ [b+1,c]`.
///
/// Signed indicators satisfy `χ[a,c] = χ[a,b] + χ[b+1,c]` pointwise, so at
/// every integer either exactly one side of the union agrees with `[a,c]`,
/// or the two halves carry opposite signs there and cancel.  The sijection
/// is normal.
pub fn alpha(a: i64, b: i64, c: i64) -> Sijection {
    let whole = SignedSet::interval(a, c);
    let left = SignedSet::interval(a, b);
    let right = SignedSet::interval(b + 1, c);
    let cod = SignedSet::union(left.clone(), right.clone());
    Sijection::new(whole, cod, format!("α({a},{b},{c})"), move |side, e| match side {
        Side::Dom => {
            if left.contains(e) {
                (Side::Cod, Element::left(e.clone()))
            } else {
                (Side::Cod, Element::right(e.clone()))
            }
        }
        Side::Cod => {
            let (x, other) = match e {
                Element::Left(x) => (x, Element::Right(x.clone())),
                Element::Right(x) => (x, Element::Left(x.clone())),
                _ => panic!("expected a union member, found {e:?}"),
            };
            let in_left = left.contains(x);
            let in_right = right.contains(x);
            if in_left && in_right {
                (Side::Cod, other)
            } else {
                (Side::Dom, (**x).clone())
            }
        }
    })
}
