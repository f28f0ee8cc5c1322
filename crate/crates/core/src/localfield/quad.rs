//! The unramified quadratic extension `F = F0(sqrt(eps))`, elements stored
//! as pairs over the base field.

use super::padic::{Ctx, PadicElem, Val};
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct QuadElem {
    pub re: PadicElem,
    pub im: PadicElem,
}

impl QuadElem {
    pub fn new(re: PadicElem, im: PadicElem) -> Self {
        QuadElem { re, im }
    }

    pub fn from_base(re: PadicElem) -> Self {
        let im = re.ctx().zero();
        QuadElem { re, im }
    }

    pub fn ctx(&self) -> &Ctx {
        self.re.ctx()
    }

    pub fn zero(ctx: &Ctx) -> Self {
        QuadElem { re: ctx.zero(), im: ctx.zero() }
    }

    pub fn one(ctx: &Ctx) -> Self {
        QuadElem { re: ctx.one(), im: ctx.zero() }
    }

    pub fn is_exactly_zero(&self) -> bool {
        self.re.is_exactly_zero() && self.im.is_exactly_zero()
    }

    pub fn rep_is_zero(&self) -> bool {
        self.re.rep_is_zero() && self.im.rep_is_zero()
    }

    /// True when the imaginary part vanishes (element lies in the base).
    pub fn is_base(&self) -> bool {
        self.im.rep_is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadElem { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        QuadElem { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        QuadElem { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }

    pub fn neg(&self) -> Self {
        QuadElem { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // (a + b s)(c + d s) = (ac + eps bd) + (ad + bc) s
        let eps = self.ctx().eps();
        let ac = self.re.mul(&rhs.re);
        let bd = self.im.mul(&rhs.im);
        let ad = self.re.mul(&rhs.im);
        let bc = self.im.mul(&rhs.re);
        QuadElem { re: ac.add(&eps.mul(&bd)), im: ad.add(&bc) }
    }

    /// Norm down to the base field: `a^2 - eps b^2`.
    pub fn norm(&self) -> PadicElem {
        let eps = self.ctx().eps();
        self.re.mul(&self.re).sub(&eps.mul(&self.im.mul(&self.im)))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.rep_is_zero() {
            return Err(Error::SingularInput("inverse of (approximately) zero".into()));
        }
        let n = self.norm().inv()?;
        Ok(QuadElem { re: self.re.mul(&n), im: self.im.neg().mul(&n) })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn scale_rat(&self, c: &crate::exact::Rat) -> Self {
        QuadElem { re: self.re.scale(c), im: self.im.scale(c) }
    }

    /// Valuation in the unramified extension: the minimum of the component
    /// valuations, since `1, sqrt(eps)` is an integral basis.
    pub fn valuation(&self) -> Result<Val> {
        if self.rep_is_zero() {
            // fall through to the precision logic of either part
            return self.re.valuation().and(self.im.valuation());
        }
        let vr = if self.re.rep_is_zero() { None } else { Some(self.re.valuation()?) };
        let vi = if self.im.rep_is_zero() { None } else { Some(self.im.valuation()?) };
        Ok(match (vr, vi) {
            (Some(Val::Finite(a)), Some(Val::Finite(b))) => Val::Finite(a.min(b)),
            (Some(v), None) | (None, Some(v)) => v,
            _ => Val::Infinite,
        })
    }

    pub fn is_integral(&self) -> Result<bool> {
        Ok(self.re.is_integral()? && self.im.is_integral()?)
    }

    /// Unramified quadratic character by valuation parity.
    pub fn eta(&self) -> Result<i32> {
        match self.valuation()? {
            Val::Finite(v) => Ok(if v % 2 == 0 { 1 } else { -1 }),
            Val::Infinite => Err(Error::SingularInput("eta of zero".into())),
        }
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + ({:?})*sqrt(eps)", self.re, self.im)
    }
}
