//! Finite signed sets and signed bijections ("sijections").
//!
//! A [`SignedSet`] is a lazily evaluated structural description; its members
//! are [`Element`]s carrying full provenance tags, so that elements of a
//! disjoint union built in different ways never collide.  A [`Sijection`] is
//! an involution on `dom ⊔ cod` that exchanges `dom⁺ ⊔ cod⁻` with
//! `dom⁻ ⊔ cod⁺`.  Sijections compose by the Garsia–Milne chase
//! ([`Sijection::compose`]).

mod element;
mod error;
mod fallback;
mod set;
mod sij;
mod verify;

pub use element::{Element, Sign};
pub use error::Error;
pub use fallback::matching;
pub use set::{Counts, SignedSet};
pub use sij::{Side, Sijection};
pub use verify::{Counterexample, Report};
