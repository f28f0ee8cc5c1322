//! Leibniz assembly of first derivatives over places: for a distinguished
//! place `v` the local contribution of each orbit is its derivative at `v`
//! times the product of its values everywhere else, and the sum over `v`
//! recovers the derivative of the product. The non-archimedean part stays
//! exact as a log-linear number.

use super::OrbResult;
use crate::error::{Error, Result};
use crate::exact::{LogLinear, Rat};
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub enum PlaceResult {
    NonArch { value0: Rat, deriv0: LogLinear },
    Arch { value0: f64, deriv0: f64 },
}

impl PlaceResult {
    pub fn from_orb(r: &OrbResult) -> Self {
        PlaceResult::NonArch { value0: r.value0.clone(), deriv0: r.deriv0.clone() }
    }
}

#[derive(Debug, Clone)]
pub struct OrbitRow {
    pub orbit_id: String,
    pub places: BTreeMap<String, PlaceResult>,
}

enum Product {
    Exact(Rat),
    Approx(f64),
}

impl Product {
    fn one() -> Self {
        Product::Exact(Rat::one())
    }

    fn mul_place(self, p: &PlaceResult) -> Self {
        match (self, p) {
            (Product::Exact(r), PlaceResult::NonArch { value0, .. }) => {
                Product::Exact(r * value0.clone())
            }
            (Product::Exact(r), PlaceResult::Arch { value0, .. }) => {
                Product::Approx(r.to_f64() * value0)
            }
            (Product::Approx(x), PlaceResult::NonArch { value0, .. }) => {
                Product::Approx(x * value0.to_f64())
            }
            (Product::Approx(x), PlaceResult::Arch { value0, .. }) => {
                Product::Approx(x * value0)
            }
        }
    }
}

/// `sum_orbits deriv0_v * prod_{w != v} value0_w`. Every listed orbit must
/// carry a result at the distinguished place (and at every place it lists).
pub fn assemble_partial_dj(rows: &[OrbitRow], v: &str) -> Result<LogLinear> {
    let mut total = LogLinear::zero();
    for row in rows {
        let at_v = row.places.get(v).ok_or_else(|| {
            Error::MissingPlaceData(format!("orbit {} has no data at place {v}", row.orbit_id))
        })?;
        let mut product = Product::one();
        for (w, res) in &row.places {
            if w == v {
                continue;
            }
            product = product.mul_place(res);
        }
        let contribution = match (at_v, product) {
            (PlaceResult::NonArch { deriv0, .. }, Product::Exact(r)) => deriv0.scale(&r),
            (PlaceResult::NonArch { deriv0, .. }, Product::Approx(x)) => {
                LogLinear::from_real(deriv0.to_f64() * x)
            }
            (PlaceResult::Arch { deriv0, .. }, Product::Exact(r)) => {
                LogLinear::from_real(deriv0 * r.to_f64())
            }
            (PlaceResult::Arch { deriv0, .. }, Product::Approx(x)) => {
                LogLinear::from_real(deriv0 * x)
            }
        };
        total = total + contribution;
    }
    Ok(total)
}

/// All places appearing in the table, sorted.
pub fn all_places(rows: &[OrbitRow]) -> Vec<String> {
    let mut set = std::collections::BTreeSet::new();
    for row in rows {
        for w in row.places.keys() {
            set.insert(w.clone());
        }
    }
    set.into_iter().collect()
}
