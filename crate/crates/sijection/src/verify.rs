use std::panic::{catch_unwind, AssertUnwindSafe};

use serde::Serialize;
use serde_json::Value;

use crate::{Element, Side, Sign, Sijection};

/// First violation found by [`Sijection::verify`].
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub side: String,
    pub element: Value,
    pub image: Option<Value>,
    pub reason: String,
}

/// Outcome of exhaustively checking a sijection.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    pub ok: bool,
    pub checked: usize,
    pub dom_size: i64,
    pub cod_size: i64,
    pub counterexample: Option<Counterexample>,
}

fn side_name(side: Side) -> String {
    match side {
        Side::Dom => "dom".into(),
        Side::Cod => "cod".into(),
    }
}

// +1 for dom⁺ ⊔ cod⁻, -1 for dom⁻ ⊔ cod⁺; a sijection flips it.
fn charge(side: Side, sign: Sign) -> Sign {
    match side {
        Side::Dom => sign,
        Side::Cod => -sign,
    }
}

impl Sijection {
    /// Checks totality, the involution property and sign-crossing on every
    /// member of `dom ⊔ cod`.
    pub fn verify(&self) -> Report {
        let mut checked = 0;
        let mut failure = None;
        'outer: for side in [Side::Dom, Side::Cod] {
            for (e, sign) in self.set(side).iter() {
                checked += 1;
                if let Err(cx) = self.check_point(side, &e, sign) {
                    failure = Some(cx);
                    break 'outer;
                }
            }
        }
        Report {
            name: self.name().to_string(),
            ok: failure.is_none(),
            checked,
            dom_size: self.dom().size(),
            cod_size: self.cod().size(),
            counterexample: failure,
        }
    }

    fn check_point(&self, side: Side, e: &Element, sign: Sign) -> Result<(), Counterexample> {
        let fail = |image: Option<&Element>, reason: String| Counterexample {
            side: side_name(side),
            element: e.to_json_signed(sign),
            image: image.map(|x| x.to_json()),
            reason,
        };
        let (s2, x) = catch_unwind(AssertUnwindSafe(|| self.apply(side, e)))
            .map_err(|p| fail(None, format!("map panicked: {}", panic_text(&p))))?;
        let Some(sign2) = self.set(s2).sign_of(&x) else {
            return Err(fail(Some(&x), format!("image is not a member of {}", side_name(s2))));
        };
        if charge(s2, sign2) != -charge(side, sign) {
            return Err(fail(Some(&x), "image does not cross signs".into()));
        }
        let back = catch_unwind(AssertUnwindSafe(|| self.apply(s2, &x)))
            .map_err(|p| fail(Some(&x), format!("map panicked on the image: {}", panic_text(&p))))?;
        if back != (side, e.clone()) {
            return Err(fail(Some(&x), "map is not an involution here".into()));
        }
        Ok(())
    }
}

fn panic_text(p: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = p.downcast_ref::<String>() {
        s.clone()
    } else if let Some(s) = p.downcast_ref::<&str>() {
        s.to_string()
    } else {
        "unknown panic".into()
    }
}
