//! Exponential integral `Ei` on the negative axis.
//!
//! `Ei(-r) = -int_r^infty e^{-t}/t dt` for `r > 0`. Near zero it behaves as
//! `gamma + log r + sum (-r)^n / (n n!)`; we evaluate that series for
//! `|x| <= 1` and switch to the continued fraction of `E1` beyond.

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577215664901532860606512090082;

/// `Ei(x)` for `x < 0`, to about 1e-12 relative.
pub fn exp_integral(x: f64) -> Result<f64> {
    if !x.is_finite() || x >= 0.0 {
        return Err(Error::DomainError(format!("Ei requires x < 0, got {x}")));
    }
    if x >= -1.0 {
        Ok(ei_series(x))
    } else {
        Ok(-e1_continued_fraction(-x))
    }
}

fn ei_series(x: f64) -> f64 {
    let mut term = 1.0f64;
    let mut sum = 0.0f64;
    for n in 1..200 {
        term *= x / n as f64;
        let add = term / n as f64;
        sum += add;
        if add.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    EULER_GAMMA + x.abs().ln() + sum
}

/// `E1(z)` for `z > 0` via the standard continued fraction
/// `e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...))))` (modified Lentz).
fn e1_continued_fraction(z: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = z + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for k in 1..500u32 {
        let a = -((k as f64) * (k as f64));
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-z).exp() * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::integrate;

    #[test]
    fn reference_value() {
        // Ei(-1) = -0.21938393439552027...
        let v = exp_integral(-1.0).unwrap();
        assert!((v + 0.21938393439552027).abs() < 1e-13);
    }

    #[test]
    fn domain() {
        assert!(exp_integral(0.0).is_err());
        assert!(exp_integral(1.0).is_err());
    }

    #[test]
    fn integrand_bound_far_out() {
        // |Ei(-10)| <= e^{-10}/10
        let v = exp_integral(-10.0).unwrap().abs();
        assert!(v <= (-10.0f64).exp() / 10.0);
    }

    #[test]
    fn quadrature_oracle() {
        // compare against the defining integral on a log-spaced grid
        for &r in &[1e-4, 1e-2, 0.5, 1.0, 2.0, 5.0, 20.0] {
            let oracle = -integrate(|t| (-t).exp() / t, r, r + 60.0, 1e-14).unwrap();
            let v = exp_integral(-r).unwrap();
            assert!(
                (v - oracle).abs() <= 1e-10 * oracle.abs().max(1.0),
                "r = {r}: {v} vs {oracle}"
            );
        }
    }

    #[test]
    fn small_r_expansion() {
        // Ei(-r) - (gamma + log r) -> 0 as r -> 0+, matching the series
        let r = 1e-6;
        let v = exp_integral(-r).unwrap();
        let expansion = EULER_GAMMA + r.ln() - r + r * r / 4.0;
        assert!((v - expansion).abs() < 1e-12);
    }

    #[test]
    fn switchover_is_seamless() {
        // both evaluation paths agree at the switch point
        let series = ei_series(-1.0);
        let cf = -e1_continued_fraction(1.0);
        assert!((series - cf).abs() < 1e-13);
    }
}
