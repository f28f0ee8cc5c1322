//! Arbitrary-precision rationals, always in lowest terms with positive
//! denominator.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Exact rational number. Thin wrapper over [`BigRational`] fixing the
/// string format `num/den` (plain `num` when the denominator is 1).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rat(BigRational::new(num, den))
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Rat::one();
        }
        let base = if k < 0 { self.recip() } else { self.clone() };
        let mut acc = Rat::one();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc *= sq.clone();
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * sq;
            }
        }
        acc
    }

    /// p-adic valuation of a nonzero rational; `None` for zero.
    pub fn valuation(&self, p: &BigInt) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(int_valuation(self.numer(), p) - int_valuation(self.denom(), p))
    }

    pub fn to_f64(&self) -> f64 {
        big_to_f64(self.numer()) / big_to_f64(self.denom())
    }
}

/// Exact multiplicity of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: &BigInt) -> i64 {
    assert!(!n.is_zero());
    let mut v = 0i64;
    let mut m = n.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

fn big_to_f64(n: &BigInt) -> f64 {
    // BigInt::to_f64 saturates appropriately; fall back to sign-infinity.
    num_traits::ToPrimitive::to_f64(n).unwrap_or(match n.sign() {
        Sign::Minus => f64::NEG_INFINITY,
        _ => f64::INFINITY,
    })
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, "1"),
        };
        let n = BigInt::from_str(num.trim()).map_err(|e| e.to_string())?;
        let d = BigInt::from_str(den.trim()).map_err(|e| e.to_string())?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Rat::new(n, d))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Rat::from_str(&s).map_err(de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Rat {
    fn mul_assign(&mut self, rhs: Rat) {
        self.0 *= rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = Rat::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(r.to_string(), "-3/2");
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn string_roundtrip() {
        for s in ["0", "7", "-3/2", "22/7"] {
            assert_eq!(Rat::from_str(s).unwrap().to_string(), s);
        }
        assert_eq!(Rat::from_str("4/2").unwrap().to_string(), "2");
    }

    #[test]
    fn valuation() {
        let p = BigInt::from(3);
        assert_eq!(Rat::from_int(9).valuation(&p), Some(2));
        assert_eq!(Rat::new(1.into(), 3.into()).valuation(&p), Some(-1));
        assert_eq!(Rat::zero().valuation(&p), None);
        assert_eq!(Rat::new(10.into(), 7.into()).valuation(&p), Some(0));
    }

    #[test]
    fn pow_negative() {
        let r = Rat::new(2.into(), 3.into());
        assert_eq!(r.pow(-2), Rat::new(9.into(), 4.into()));
    }
}
