//! Gelfand–Tsetlin patterns for arbitrary bottom rows, monotone triangles
//! and their signs, arrow patterns and rows, shifted GT patterns, and the
//! two sijections `π` and `Γ` that the later constructions depend on.

mod arrows;
mod gt;
mod mt;
mod plug;

pub use arrows::{
    ap, ar, arrow_pattern_sign, c_vector, deform, mu_t, pattern_index, sgt, t_mu, ArrowPattern, BOTH, NE, NW, SE, SW,
};
pub use gt::{gt, gt_element, gt_rows, gt_shift};
pub use mt::{
    asm_to_mt, format_triangle, interlaces, monotone_triangles, mt, mt_element, mt_i, mt_rows, mt_sign, mt_to_asm,
    mt_upper_i,
};
pub use plug::{gamma, pi_sij, pi_target, Impl};
