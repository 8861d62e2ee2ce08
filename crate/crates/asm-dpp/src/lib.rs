//! Alternating sign matrices and descending plane partitions: the concrete
//! families, the recurrence sijection for `ASM_{n,i}`, the path sijection
//! from determinants to DPPs, and the two bijections
//! `DPP_{n-1} × B_{n,1} × ASM_{n,i} → DPP_{n-1} × ASM_{n,1} × B_{n,i}` and
//! `DPP_{n-1} × ASM_{n,i} → ASM_{n,1} × DPP_{n,i}`.

mod families;
mod fromdet;
mod lgv;
mod mti;
mod problems;
mod recurrence;
mod table;

pub use families::{
    asm_formula, asm_reflect, asm_refined_formula, asm_rotate90, asm_set, dpp_i_set, dpp_set, enumerate_asm,
    enumerate_asm_i, enumerate_dpp, enumerate_dpp_i, Asm, Dpp, Turn,
};
pub use fromdet::{from_det, p_matrix, s_matrix, t_matrix};
pub use lgv::{lgv_dpp_j_sij, lgv_dpp_sij, w_j_matrix, w_matrix};
pub use mti::{mti_sij, mti_target, mti_upper_sij, mti_upper_target};
pub use problems::{asm_to_dpp, asm_to_dpp_with, main_bijection, main_bijection_with, Bijection};
pub use recurrence::{asm_recurrence, asm_recurrence_lhs, asm_recurrence_with};
pub use table::{Problem, Table};
