//! The sijection `MT(k) ⇒ (-1)^{n-1} MT(rot(k))` with
//! `rot(k) = (k_2, …, k_n, k_1 - n)`, and the signed sets of GT patterns
//! with unit shifts it is built from.

mod elementary;
mod ltr;
mod prep;
mod rot;

pub use elementary::{
    e_prime, e_prime_set, e_prime_target, e_set, e_zero, f_prime, f_prime_set, f_prime_target, f_set, f_zero,
};
pub use ltr::{left_to_right, ltr_left, ltr_right};
pub use prep::{prep_elementary, prep_elementary_f};
pub use rot::{rot, rotate_mt, rotate_mt_with};
