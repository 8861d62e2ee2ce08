//! Sijections between sets of integer intervals and subsets: the interval
//! splitting sijection α, the trinomial bijection, a signed Chu–Vandermonde
//! identity, and the recurrence satisfied by the sets `B_{n,i}`.

mod alpha;
mod binom;
mod bset;

pub use alpha::alpha;
pub use binom::{
    binom, binom_complement, binomial, chu_vandermonde, cv_lhs, cv_rhs, k_subsets, trinomial,
};
pub use bset::{b_recurrence, b_recurrence_lhs, b_split, bset, bset_all, format_bset};
