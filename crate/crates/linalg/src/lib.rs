//! Bijective linear algebra over signed sets: determinants, the product
//! rule and Cramer's rule as sijections.

mod det;
mod perm;

pub use det::{cramer, det_map, det_product, determinant, solve_zero, Matrix};
pub use perm::{compose_perm, invert_perm, perm_sign, permutations, symmetric_group};
