//! Exact arithmetic in prime-power cyclotomic fields.
//!
//! Character sums over p-adic cosets take values in `Q(zeta_{p^a})`. A
//! number is stored on the power basis `zeta^k`, `0 <= k < phi(p^a)`,
//! using the relation `1 + zeta^{n/p} + ... + zeta^{(p-1)n/p} = 0` to
//! reduce; equality is then coordinatewise and exact.

use crate::exact::Rat;
use std::collections::BTreeMap;
use std::fmt;

/// Element of `Q(zeta_{p^level})`, `zeta = e^{2 pi i / p^level}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycNum {
    p: u64,
    /// Exponent `a` of the conductor `p^a`; 0 means rational.
    level: u32,
    /// Sparse coordinates on the reduced power basis.
    coeffs: BTreeMap<u64, Rat>,
}

impl CycNum {
    pub fn zero(p: u64) -> Self {
        CycNum { p, level: 0, coeffs: BTreeMap::new() }
    }

    pub fn from_rat(p: u64, r: Rat) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        CycNum { p, level: 0, coeffs }
    }

    pub fn one(p: u64) -> Self {
        Self::from_rat(p, Rat::one())
    }

    /// `e^{2 pi i phase}` for a rational phase with p-power denominator.
    pub fn root_of_unity(p: u64, phase: &Rat) -> Self {
        let (level, num) = phase_to_exponent(p, phase);
        let mut out = CycNum { p, level, coeffs: BTreeMap::new() };
        out.accumulate_exponent(num, Rat::one());
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> Option<Rat> {
        if self.coeffs.is_empty() {
            return Some(Rat::zero());
        }
        if self.coeffs.len() == 1 {
            if let Some(r) = self.coeffs.get(&0) {
                return Some(r.clone());
            }
        }
        None
    }

    fn n(&self) -> u64 {
        self.p.pow(self.level)
    }

    fn phi(&self) -> u64 {
        if self.level == 0 {
            1
        } else {
            self.n() - self.n() / self.p
        }
    }

    /// Raise to a common level with `other` (exponents scale by the index).
    fn unify(&self, other: &Self) -> (Self, Self) {
        let level = self.level.max(other.level);
        (self.at_level(level), other.at_level(level))
    }

    fn at_level(&self, level: u32) -> Self {
        assert!(level >= self.level);
        if level == self.level {
            return self.clone();
        }
        let scale = self.p.pow(level - self.level);
        let mut out = CycNum { p: self.p, level, coeffs: BTreeMap::new() };
        for (k, c) in &self.coeffs {
            out.accumulate_exponent(k * scale, c.clone());
        }
        out
    }

    /// Add `c * zeta^k`, reducing into the basis range.
    fn accumulate_exponent(&mut self, k: u64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let n = self.n();
        let k = if n == 0 { 0 } else { k % n.max(1) };
        let phi = self.phi();
        if k < phi {
            let entry = self.coeffs.entry(k).or_insert_with(Rat::zero);
            *entry += c;
            if entry.is_zero() {
                self.coeffs.remove(&k);
            }
            return;
        }
        // k in [phi, n): k = r + (p-1) n/p, substitute
        // zeta^{(p-1) n/p} = -(1 + zeta^{n/p} + ... + zeta^{(p-2) n/p}).
        let step = n / self.p;
        let r = k - (self.p - 1) * step;
        for t in 0..(self.p - 1) {
            self.accumulate_exponent(r + t * step, -c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.unify(other);
        for (k, c) in b.coeffs {
            a.accumulate_exponent(k, c);
        }
        a.normalize_level();
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CycNum {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.unify(other);
        let mut out = CycNum { p: a.p, level: a.level, coeffs: BTreeMap::new() };
        for (k1, c1) in &a.coeffs {
            for (k2, c2) in &b.coeffs {
                out.accumulate_exponent(k1 + k2, c1 * c2);
            }
        }
        out.normalize_level();
        out
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return CycNum::zero(self.p);
        }
        CycNum {
            p: self.p,
            level: self.level,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * r)).collect(),
        }
    }

    /// Complex conjugate (`zeta -> zeta^{-1}`).
    pub fn conj(&self) -> Self {
        let n = self.n();
        let mut out = CycNum { p: self.p, level: self.level, coeffs: BTreeMap::new() };
        for (k, c) in &self.coeffs {
            out.accumulate_exponent((n - k) % n.max(1), c.clone());
        }
        out.normalize_level();
        out
    }

    /// Drop to the smallest level representing the element (descends only
    /// when every populated exponent is divisible by p and the element is
    /// expressible there; conservative, used to keep rationals rational).
    fn normalize_level(&mut self) {
        while self.level > 0 {
            let scale = self.p;
            if self.coeffs.keys().all(|k| k % scale == 0) {
                // all exponents divisible by p: rewrite at level - 1;
                // basis-safety: dividing exponents keeps them below phi
                let coeffs: BTreeMap<u64, Rat> = self
                    .coeffs
                    .iter()
                    .map(|(k, c)| (k / scale, c.clone()))
                    .collect();
                let mut lowered = CycNum { p: self.p, level: self.level - 1, coeffs: BTreeMap::new() };
                for (k, c) in coeffs {
                    lowered.accumulate_exponent(k, c);
                }
                *self = lowered;
            } else {
                return;
            }
        }
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        let n = self.n().max(1) as f64;
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (k, c) in &self.coeffs {
            acc += num_complex::Complex64::from_polar(
                c.to_f64(),
                2.0 * std::f64::consts::PI * (*k as f64) / n,
            );
        }
        acc
    }
}

/// Normalize a rational phase (mod 1) to `(level, numerator)` with
/// `phase = numerator / p^level`.
fn phase_to_exponent(p: u64, phase: &Rat) -> (u32, u64) {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let den = phase.denom();
    let mut level = 0u32;
    let mut m = den.clone();
    let pb = BigInt::from(p);
    while (&m % &pb) == BigInt::from(0) {
        m /= &pb;
        level += 1;
    }
    assert!(
        m == BigInt::from(1),
        "phase denominator {den} is not a power of p = {p}"
    );
    let n = pb.pow(level);
    let num = ((phase.numer() % &n) + &n) % &n;
    (level, num.to_u64().expect("phase numerator fits"))
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            if *k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*z{}^{k}", self.n())?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phase(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn pth_roots_sum_to_zero() {
        for p in [3u64, 5] {
            let mut acc = CycNum::zero(p);
            for k in 0..p {
                acc = acc.add(&CycNum::root_of_unity(p, &phase(k as i64, p as i64)));
            }
            assert!(acc.is_zero(), "p = {p}");
        }
    }

    #[test]
    fn root_times_conjugate_is_one() {
        let z = CycNum::root_of_unity(3, &phase(5, 27));
        let prod = z.mul(&z.conj());
        assert_eq!(prod.is_rational(), Some(Rat::one()));
    }

    #[test]
    fn phases_add_under_multiplication() {
        let a = CycNum::root_of_unity(3, &phase(1, 9));
        let b = CycNum::root_of_unity(3, &phase(5, 27));
        let lhs = a.mul(&b);
        let rhs = CycNum::root_of_unity(3, &phase(8, 27)); // 3/27 + 5/27
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mixed_level_addition() {
        // zeta_3 + zeta_9^3 = 2 zeta_3
        let a = CycNum::root_of_unity(3, &phase(1, 3));
        let b = CycNum::root_of_unity(3, &phase(3, 9));
        let sum = a.add(&b);
        assert_eq!(sum, a.scale(&Rat::from_int(2)));
    }

    #[test]
    fn geometric_sum_collapses() {
        // sum over x mod 9 of e^{2 pi i x/9} = 0; over x mod 9 of
        // e^{2 pi i (3x)/9} = 0 as well; constant phase sums to the count
        let mut s1 = CycNum::zero(3);
        let mut s2 = CycNum::zero(3);
        let mut s3 = CycNum::zero(3);
        for x in 0..9i64 {
            s1 = s1.add(&CycNum::root_of_unity(3, &phase(x, 9)));
            s2 = s2.add(&CycNum::root_of_unity(3, &phase(3 * x, 9)));
            s3 = s3.add(&CycNum::root_of_unity(3, &phase(9 * x, 9)));
        }
        assert!(s1.is_zero());
        assert!(s2.is_zero());
        assert_eq!(s3.is_rational(), Some(Rat::from_int(9)));
    }

    #[test]
    fn numeric_embedding_consistent() {
        let z = CycNum::root_of_unity(5, &phase(2, 25));
        let w = CycNum::root_of_unity(5, &phase(3, 5));
        let sum = z.add(&w);
        let expect = z.to_complex() + w.to_complex();
        assert!((sum.to_complex() - expect).norm() < 1e-12);
    }
}
