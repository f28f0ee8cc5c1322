//! Finite model of the Weil representation of SL2 on Schwartz functions of
//! the split binary quadratic space, with exact invariance checks for the
//! distinguished maximal compact subgroups.

pub mod cyclotomic;
pub mod schwartz;

pub use cyclotomic::CycNum;
pub use schwartz::{check_k_invariance, k_generators, weil_act, SchwartzFn, Sl2Gen, Window};
