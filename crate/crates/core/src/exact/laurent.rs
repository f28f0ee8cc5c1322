//! Laurent polynomials in `X = q^{-s}` with rational coefficients.
//!
//! Every non-archimedean orbital integral in this crate is such a
//! polynomial. The variable `q` does not enter until special values are
//! extracted, so one polynomial serves every residue cardinality.

use super::loglin::LogLinear;
use super::rat::Rat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Laurent polynomial `sum_k c_k X^k`, signed integer exponents, no stored
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, Rat::one())
    }

    pub fn monomial(exp: i64, coeff: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rat {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add_term(&mut self, exp: i64, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    /// Multiply by the monomial `c X^k`.
    pub fn mul_monomial(&self, k: i64, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, r)| (e + k, r * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        self.mul_monomial(0, c)
    }

    /// Value of the polynomial at `s = 0`, i.e. `sum_k c_k`.
    pub fn value_at_s0(&self) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.values() {
            acc += c.clone();
        }
        acc
    }

    /// `sum_k k c_k`, the exponent-weighted coefficient sum driving the
    /// derivative at `s = 0`.
    pub fn weighted_coeff_sum(&self) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.coeffs {
            acc += Rat::from_int(*e) * c.clone();
        }
        acc
    }

    /// Evaluate at a concrete rational value of `X`.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.coeffs {
            acc += c * &x.pow(*e);
        }
        acc
    }
}

/// Special values at `s = 0` for residue cardinality `q`.
///
/// With `X = q^{-s}` one has `d/ds X^k = -k log(q) X^k`, so the value is
/// `sum c_k` and the derivative is `-(sum k c_k) log q`. Writing
/// `q = l^f` for the underlying prime `l`, the derivative is expressed as
/// the exact log-linear number `-(sum k c_k) * f * log l`.
pub fn laurent_special_values(poly: &LaurentPoly, q: u64) -> (Rat, LogLinear) {
    let (l, f) = factor_prime_power(q).expect("q must be a prime power >= 2");
    let value = poly.value_at_s0();
    let coeff = -(poly.weighted_coeff_sum() * Rat::from_int(f));
    (value, LogLinear::from_log_term(l, coeff))
}

/// Decompose a prime power `q = l^f`; `None` if `q` is not one.
pub fn factor_prime_power(q: u64) -> Option<(u64, i64)> {
    if q < 2 {
        return None;
    }
    let mut l = 0u64;
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            l = d;
            break;
        }
        d += 1;
    }
    if l == 0 {
        l = q; // q itself prime
    }
    let mut f = 0i64;
    let mut m = q;
    while m.is_multiple_of(l) {
        m /= l;
        f += 1;
    }
    if m == 1 {
        Some((l, f))
    } else {
        None
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*X")?,
                _ => write!(f, "{c}*X^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        let mut out = self;
        for (e, c) in rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(*e, Rat::from_int(*c));
        }
        p
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let mut p = poly(&[(2, 5)]);
        p.add_term(2, Rat::from_int(-5));
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn special_values_constant() {
        let (v, d) = laurent_special_values(&LaurentPoly::one(), 3);
        assert_eq!(v, Rat::one());
        assert!(d.is_zero());
    }

    #[test]
    fn special_values_one_minus_xinv() {
        // 1 - X^{-1} at q = 3: value 0, derivative -log 3.
        let p = poly(&[(0, 1), (-1, -1)]);
        let (v, d) = laurent_special_values(&p, 3);
        assert!(v.is_zero());
        assert_eq!(d, LogLinear::from_log_term(3, Rat::from_int(-1)));
    }

    #[test]
    fn special_values_alternating_len4() {
        // 1 - X^{-1} + X^{-2} - X^{-3} at q = 5: value 0, derivative -2 log 5.
        let p = poly(&[(0, 1), (-1, -1), (-2, 1), (-3, -1)]);
        let (v, d) = laurent_special_values(&p, 5);
        assert!(v.is_zero());
        assert_eq!(d, LogLinear::from_log_term(5, Rat::from_int(-2)));
    }

    #[test]
    fn prime_power_factoring() {
        assert_eq!(factor_prime_power(3), Some((3, 1)));
        assert_eq!(factor_prime_power(9), Some((3, 2)));
        assert_eq!(factor_prime_power(27), Some((3, 3)));
        assert_eq!(factor_prime_power(32), Some((2, 5)));
        assert_eq!(factor_prime_power(12), None);
        assert_eq!(factor_prime_power(1), None);
    }

    #[test]
    fn prime_power_in_derivative_scale() {
        // q = 9 = 3^2: derivative of X^{-1} is log 9 = 2 log 3.
        let p = poly(&[(-1, 1)]);
        let (_, d) = laurent_special_values(&p, 9);
        assert_eq!(d, LogLinear::from_log_term(3, Rat::from_int(2)));
    }
}
