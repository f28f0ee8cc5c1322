//! Arithmetic in an unramified extension of the p-adic numbers, its
//! unramified quadratic extension, characters, and lattice canonical forms.

pub mod lattice;
pub mod matrix;
pub mod padic;
pub mod quad;

pub use lattice::{lattice_canonicalize, Lattice};
pub use matrix::Matrix;
pub use padic::{
    additive_character, p_fractional_part, val_and_eta, Ctx, LocalFieldSpec, PadicCtx, PadicElem,
    Val, DEFAULT_PRECISION,
};
pub use quad::QuadElem;
