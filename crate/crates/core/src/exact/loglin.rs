//! Log-linear reals: `float + sum_l r_l log l` over finitely many primes,
//! rational coefficients kept exact.
//!
//! These model lifts of elements of the quotient of the reals by the
//! rational span of `log q_v` over a finite place set `S`: equality modulo
//! `S` discards the `log l` components at primes of `S` and is decided
//! exactly on the rest.

use super::rat::Rat;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Default absolute tolerance for comparing the float parts.
pub const REAL_PART_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct LogLinear {
    /// Transcendental-part carrier; archimedean quantities end up here.
    #[serde(rename = "real")]
    pub real_part: f64,
    /// Map prime -> rational coefficient of `log prime`.
    #[serde(rename = "logs")]
    pub log_part: BTreeMap<u64, Rat>,
}

impl LogLinear {
    pub fn zero() -> Self {
        LogLinear::default()
    }

    pub fn from_real(x: f64) -> Self {
        LogLinear {
            real_part: x,
            log_part: BTreeMap::new(),
        }
    }

    /// The single term `r * log l` (dropped when `r = 0`).
    pub fn from_log_term(l: u64, r: Rat) -> Self {
        let mut log_part = BTreeMap::new();
        if !r.is_zero() {
            log_part.insert(l, r);
        }
        LogLinear {
            real_part: 0.0,
            log_part,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.real_part == 0.0 && self.log_part.is_empty()
    }

    /// Coefficient of `log l`.
    pub fn log_coeff(&self, l: u64) -> Rat {
        self.log_part.get(&l).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LogLinear::zero();
        }
        LogLinear {
            real_part: self.real_part * c.to_f64(),
            log_part: self.log_part.iter().map(|(l, r)| (*l, r * c)).collect(),
        }
    }

    /// Collapse to a float; exactness is lost, numeric contexts only.
    pub fn to_f64(&self) -> f64 {
        let mut acc = self.real_part;
        for (l, r) in &self.log_part {
            acc += r.to_f64() * (*l as f64).ln();
        }
        acc
    }

    fn merge(mut self, rhs: &LogLinear, sign: i64) -> LogLinear {
        let s = Rat::from_int(sign);
        self.real_part += (sign as f64) * rhs.real_part;
        for (l, r) in &rhs.log_part {
            let entry = self.log_part.entry(*l).or_insert_with(Rat::zero);
            *entry += &s * r;
            if entry.is_zero() {
                self.log_part.remove(l);
            }
        }
        self
    }
}

/// Equality of `x` and `y` modulo the prime set `S`: the `log l`
/// coefficients at primes outside `S` must agree exactly, the float parts
/// within `tol` (absolute).
pub fn loglin_reduce_eq_tol(x: &LogLinear, y: &LogLinear, s: &BTreeSet<u64>, tol: f64) -> bool {
    let diff = x.clone() - y.clone();
    if diff.log_part.keys().any(|l| !s.contains(l)) {
        return false;
    }
    diff.real_part.abs() <= tol
}

/// [`loglin_reduce_eq_tol`] with the default float tolerance.
pub fn loglin_reduce_eq(x: &LogLinear, y: &LogLinear, s: &BTreeSet<u64>) -> bool {
    loglin_reduce_eq_tol(x, y, s, REAL_PART_TOL)
}

impl Add for LogLinear {
    type Output = LogLinear;
    fn add(self, rhs: LogLinear) -> LogLinear {
        self.merge(&rhs, 1)
    }
}

impl Sub for LogLinear {
    type Output = LogLinear;
    fn sub(self, rhs: LogLinear) -> LogLinear {
        self.merge(&rhs, -1)
    }
}

impl Neg for LogLinear {
    type Output = LogLinear;
    fn neg(self) -> LogLinear {
        LogLinear::zero().merge(&self, -1)
    }
}

impl Mul<Rat> for LogLinear {
    type Output = LogLinear;
    fn mul(self, rhs: Rat) -> LogLinear {
        self.scale(&rhs)
    }
}

impl fmt::Display for LogLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if self.real_part != 0.0 {
            write!(f, "{}", self.real_part)?;
            first = false;
        }
        for (l, r) in &self.log_part {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({r})*log {l}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn primes(ps: &[u64]) -> BTreeSet<u64> {
        ps.iter().copied().collect()
    }

    #[test]
    fn quotient_kills_s_components() {
        let x = LogLinear::from_log_term(3, Rat::from_int(2)) + LogLinear::from_real(0.5);
        let y = LogLinear::from_real(0.5);
        assert!(loglin_reduce_eq(&x, &y, &primes(&[3])));
        assert!(!loglin_reduce_eq(&x, &y, &primes(&[])));
    }

    #[test]
    fn distinct_log_primes_differ() {
        let x = LogLinear::from_log_term(3, Rat::one());
        let y = LogLinear::from_log_term(5, Rat::one());
        assert!(!loglin_reduce_eq(&x, &y, &primes(&[])));
        assert!(loglin_reduce_eq(&x, &y, &primes(&[3, 5])));
    }

    #[test]
    fn zero_equals_zero() {
        let z = LogLinear::zero();
        assert!(loglin_reduce_eq(&z, &z, &primes(&[2, 3])));
    }

    #[test]
    fn float_tolerance_is_absolute() {
        let x = LogLinear::from_real(1.0);
        let y = LogLinear::from_real(1.0 + 0.5e-9);
        assert!(loglin_reduce_eq(&x, &y, &primes(&[])));
        let z = LogLinear::from_real(1.0 + 1e-6);
        assert!(!loglin_reduce_eq(&x, &z, &primes(&[])));
    }
}
