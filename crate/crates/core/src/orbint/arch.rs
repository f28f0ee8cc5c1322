//! Archimedean orbital integrals for the odd Gaussian test function
//! `phi'(x, y) = (x + y)/2 * exp(-pi (x^2 + y^2))` on the split binary
//! space over the reals, in the Iwasawa coordinates `(a, b, theta)`.
//!
//! Closed forms: the value at `s = 0` is
//! `chi_1(kappa_theta) a^{1/2} e^{2 pi i zeta (b + i a)}` for `zeta > 0`
//! and `0` for `zeta < 0`; in the latter case the derivative is
//! `1/2 chi_1(kappa_theta) a^{1/2} e^{2 pi i zeta (b + i a)} Ei(-4 pi a |zeta|)`.
//! The quadrature below is the independent oracle.

use crate::error::{Error, Result};
use crate::green::exp_integral;
use crate::numeric::integrate;
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy)]
pub struct ArchOrbResult {
    pub value: Complex64,
    /// Derivative at `s = 0`; available in closed form for `zeta < 0` only
    /// (for `zeta > 0` use the quadrature).
    pub deriv: Option<Complex64>,
}

fn check_domain(zeta: f64, a: f64) -> Result<()> {
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::DomainError(format!("a = {a} must be positive")));
    }
    if zeta == 0.0 || !zeta.is_finite() {
        return Err(Error::DomainError("zeta must be a nonzero real".into()));
    }
    Ok(())
}

fn whittaker_like(zeta: f64, a: f64, b: f64, theta: f64) -> Complex64 {
    let chi1 = Complex64::from_polar(1.0, theta);
    let phase = Complex64::from_polar(1.0, 2.0 * PI * zeta * b);
    chi1 * phase * a.sqrt() * (-2.0 * PI * zeta * a).exp()
}

/// Closed-form value and (for `zeta < 0`) derivative at `s = 0`.
pub fn orb_arch(zeta: f64, a: f64, b: f64, theta: f64) -> Result<ArchOrbResult> {
    check_domain(zeta, a)?;
    let w = whittaker_like(zeta, a, b, theta);
    if zeta > 0.0 {
        Ok(ArchOrbResult { value: w, deriv: None })
    } else {
        let ei = exp_integral(-4.0 * PI * a * zeta.abs())?;
        Ok(ArchOrbResult {
            value: Complex64::new(0.0, 0.0),
            deriv: Some(0.5 * w * ei),
        })
    }
}

/// Half-line truncation for the substitution `t = exp(x)`: beyond this the
/// Gaussian factor underflows to zero.
const LOG_T_CUTOFF: f64 = 30.0;

/// The reduced integrand `g(e^x) e^{s x}` (the full integrand over both
/// half-lines equals twice this by oddness of `g`), with an optional
/// `log t` weight for differentiation under the integral sign.
fn half_line_integral(zeta: f64, a: f64, s: f64, log_weight: bool) -> Result<f64> {
    // orbit parameterization u1 = zeta, u2 = 1
    let u1 = zeta;
    let g = move |x: f64| {
        let t = x.exp();
        let y1 = u1 / t;
        let y2 = t;
        let gauss = (-PI * a * (y1 * y1 + y2 * y2)).exp();
        let val = 0.5 * a.sqrt() * (y1 + y2) * gauss * (s * x).exp();
        if log_weight {
            val * x
        } else {
            val
        }
    };
    integrate(g, -LOG_T_CUTOFF, LOG_T_CUTOFF, 1e-13)
}

/// Numerical evaluation of the orbital integral at real `s`, to about
/// `1e-10` absolute.
pub fn orb_arch_quadrature(zeta: f64, a: f64, b: f64, theta: f64, s: f64) -> Result<Complex64> {
    check_domain(zeta, a)?;
    let u1 = zeta;
    let j = 2.0 * half_line_integral(zeta, a, s, false)?;
    let norm = u1.signum() * u1.abs().powf(-s);
    let prefactor = Complex64::from_polar(1.0, theta)
        * Complex64::from_polar(1.0, 2.0 * PI * b * zeta)
        * a.sqrt();
    Ok(prefactor * norm * j)
}

/// Numerical `d/ds` at `s = 0` by differentiating under the integral sign
/// (the integrand gains a `log|t| - log|u1|` weight).
pub fn orb_arch_quadrature_deriv(zeta: f64, a: f64, b: f64, theta: f64) -> Result<Complex64> {
    check_domain(zeta, a)?;
    let u1 = zeta;
    let j0 = 2.0 * half_line_integral(zeta, a, 0.0, false)?;
    let j1 = 2.0 * half_line_integral(zeta, a, 0.0, true)?;
    let prefactor = Complex64::from_polar(1.0, theta)
        * Complex64::from_polar(1.0, 2.0 * PI * b * zeta)
        * a.sqrt()
        * u1.signum();
    Ok(prefactor * (j1 - u1.abs().ln() * j0))
}
