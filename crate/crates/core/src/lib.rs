//! Exact computation of the analytic ingredients of a rank-one arithmetic
//! intersection comparison: p-adic orbital integrals as Laurent polynomials
//! in `q^{-s}`, their special values and first derivatives at `s = 0`,
//! orbit invariants and transfer factors, a finite model of the Weil
//! representation with its compact-open invariance checks, archimedean
//! Gaussian orbital integrals, Kudla-type Green function kernels, and
//! rank-one hermitian lattice invariants with Diff sets.
//!
//! Every closed form carries an independent brute-force oracle; the
//! acceptance suite in `tests/acceptance.rs` cross-validates them.

pub mod error;
pub mod exact;
pub mod localfield;
pub mod green;
pub mod hermdiff;
pub mod numeric;
pub mod orbint;
pub mod orbits;
pub mod selftest;
pub mod weil;

pub use error::{Error, Result};
