//! Rank-one hermitian lattice invariants over an unramified quadratic
//! extension, Diff sets of incoherent families, and the degree-factor
//! cross-check against the orbital-integral derivative.
//!
//! Places are abstract tags carrying only a split/nonsplit flag and local
//! signs; everything here consumes integer valuations and signs only.

use crate::error::{Error, Result};
use crate::exact::{factor_prime_power, laurent_special_values, Rat};
use crate::orbint::rank1::orb_rank1_split;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// The lattice `pi^k O_E` in the rank-one hermitian space of scale
/// valuation `v_beta` (the form is `beta N_{E/E0}` with `v(beta) = v_beta`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank1HermLattice {
    pub k: i64,
    pub v_beta: i64,
}

/// Dual exponent and, when one exists, the exponent of a self-dual lattice.
///
/// The dual of `pi^k O_E` is `pi^{-k - v_beta} O_E`; a self-dual lattice
/// exists iff the scale valuation is even, in which case it is
/// `pi^{-v_beta/2} O_E`.
pub fn rank1_dual_and_selfdual(l: Rank1HermLattice) -> (i64, Option<i64>) {
    let dual_k = -l.k - l.v_beta;
    let selfdual = if l.v_beta % 2 == 0 {
        Some(-l.v_beta / 2)
    } else {
        None
    };
    (dual_k, selfdual)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaceTag {
    pub id: String,
    pub split: bool,
    /// Local sign of the hermitian space at the place.
    pub eps: i32,
    /// Sign of the target value at the place.
    pub zeta_sign: i32,
}

/// An adelic rank-one hermitian collection described by local signs. The
/// incoherence invariant relative to the target value is that the
/// nonsplit-places product of `eps * zeta_sign` equals `-1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IncoherentFamily {
    pub places: Vec<PlaceTag>,
}

impl IncoherentFamily {
    fn incoherence_product(&self) -> i32 {
        self.places
            .iter()
            .filter(|p| !p.split)
            .map(|p| p.eps * p.zeta_sign)
            .product()
    }
}

/// The set of places where the family fails to represent the target value:
/// the nonsplit places with `eps != zeta_sign`. Under the incoherence
/// invariant this set is non-empty of odd cardinality; a coherent family is
/// rejected.
pub fn diff_set(fam: &IncoherentFamily) -> Result<BTreeSet<String>> {
    if fam.incoherence_product() != -1 {
        return Err(Error::IncoherenceViolated(
            "nonsplit signs multiply to +1: family is coherent".into(),
        ));
    }
    let out: BTreeSet<String> = fam
        .places
        .iter()
        .filter(|p| !p.split && p.eps != p.zeta_sign)
        .map(|p| p.id.clone())
        .collect();
    debug_assert!(out.len() % 2 == 1 && !out.is_empty());
    Ok(out)
}

/// Two independent routes to the local degree factor at an odd valuation
/// `v = v(delta zeta)`: the closed form `max(0, (1+v)/2)` versus the
/// orbital-integral derivative `-dOrb/log q` computed from the actual
/// Laurent polynomial. Returns whether they agree (exactly).
pub fn cm_factor_crosscheck(v_delta_zeta: i64, q: u64) -> Result<bool> {
    if v_delta_zeta % 2 == 0 {
        return Err(Error::ParityError(format!(
            "v(delta zeta) = {v_delta_zeta} must be odd"
        )));
    }
    let (l, f) = factor_prime_power(q)
        .ok_or_else(|| Error::InvalidInput(format!("q = {q} is not a prime power")))?;
    let poly = orb_rank1_split(v_delta_zeta);
    let (_, deriv) = laurent_special_values(&poly, q);
    let lhs = -(deriv.log_coeff(l) / Rat::from_int(f));
    let rhs = Rat::from_int(0.max((1 + v_delta_zeta) / 2));
    Ok(lhs == rhs)
}

/// The common value of the two routes (for reporting).
pub fn cm_factor_value(v_delta_zeta: i64) -> i64 {
    0.max((1 + v_delta_zeta) / 2)
}

pub mod sampling {
    use super::*;
    use rand::Rng;

    /// Random family satisfying the incoherence invariant: random tags,
    /// then one nonsplit place flipped if needed.
    pub fn random_incoherent_family(rng: &mut impl Rng, n_places: usize) -> IncoherentFamily {
        assert!(n_places >= 1);
        let mut places: Vec<PlaceTag> = (0..n_places)
            .map(|i| PlaceTag {
                id: format!("v{i}"),
                split: rng.gen_bool(0.4),
                eps: if rng.gen_bool(0.5) { 1 } else { -1 },
                zeta_sign: if rng.gen_bool(0.5) { 1 } else { -1 },
            })
            .collect();
        if !places.iter().any(|p| !p.split) {
            let k = rng.gen_range(0..places.len());
            places[k].split = false;
        }
        let fam = IncoherentFamily { places };
        if fam.incoherence_product() == -1 {
            return fam;
        }
        let mut fam = fam;
        let k = fam
            .places
            .iter()
            .position(|p| !p.split)
            .expect("at least one nonsplit place");
        fam.places[k].eps = -fam.places[k].eps;
        debug_assert_eq!(fam.incoherence_product(), -1);
        fam
    }
}
