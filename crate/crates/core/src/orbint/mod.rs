//! Orbital integrals: rank-one closed forms with brute-force oracles, the
//! lattice-sum model for general rank, archimedean Gaussian integrals, and
//! the place-wise assembly of first derivatives.

pub mod arch;
pub mod assemble;
pub mod lattice_sum;
pub mod rank1;

use crate::exact::{LaurentPoly, LogLinear, Rat};
use serde::Serialize;

/// Result of a non-archimedean orbital integral: the polynomial in
/// `X = q^{-s}` plus special values at `s = 0` with the transfer factor
/// applied.
#[derive(Debug, Clone, Serialize)]
pub struct OrbResult {
    pub poly: LaurentPoly,
    pub value0: Rat,
    pub deriv0: LogLinear,
    pub omega: i32,
}

pub use arch::{orb_arch, orb_arch_quadrature, orb_arch_quadrature_deriv, ArchOrbResult};
pub use assemble::{assemble_partial_dj, OrbitRow, PlaceResult};
pub use lattice_sum::{enumeration_bounds, orb_lattice_sum, orb_lattice_sum_widened};
pub use rank1::{orb_rank1_hermitian, orb_rank1_split, orb_rank1_split_brute};
