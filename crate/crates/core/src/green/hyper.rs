//! Gauss hypergeometric series and the secondary spherical function.

use super::gamma::{digamma, gamma};
use crate::error::{Error, Result};
use num_complex::Complex64;

const SERIES_BUDGET: usize = 100_000;

/// `2F1(a, b; c; x)` for real `0 <= x < 1` and complex parameters, by the
/// direct series for `x <= 1/2` and the `x -> 1 - x` connection formula
/// otherwise. The family used here always has `c = a + b`, the logarithmic
/// case of the connection formula; other parameter combinations fall back
/// to the (slower) direct series.
pub fn gauss_2f1(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::DomainError(format!(
            "2F1 evaluated for real x in [0, 1), got {x}"
        )));
    }
    if x <= 0.5 {
        return series_2f1(a, b, c, x);
    }
    if (c - a - b).norm() < 1e-12 {
        return log_case_near_one(a, b, x);
    }
    series_2f1(a, b, c, x)
}

fn series_2f1(a: Complex64, b: Complex64, c: Complex64, x: f64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..SERIES_BUDGET {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNonconvergent(format!(
        "2F1 series did not converge at x = {x}"
    )))
}

/// `F(a, b; a+b; x)` near `x = 1`:
/// `Gamma(a+b)/(Gamma(a) Gamma(b)) * sum ((a)_n (b)_n / (n!)^2)
///  [2 psi(n+1) - psi(a+n) - psi(b+n) - ln(1-x)] (1-x)^n`.
fn log_case_near_one(a: Complex64, b: Complex64, x: f64) -> Result<Complex64> {
    let y = 1.0 - x;
    let log_y = y.ln();
    let mut poch = Complex64::new(1.0, 0.0); // (a)_n (b)_n / (n!)^2 y^n
    let mut psi_n = digamma(Complex64::new(1.0, 0.0));
    let mut psi_a = digamma(a);
    let mut psi_b = digamma(b);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..SERIES_BUDGET {
        let nf = n as f64;
        let bracket = 2.0 * psi_n - psi_a - psi_b - log_y;
        let term = poch * bracket;
        sum += term;
        if n > 2 && term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            let prefactor = gamma(a + b) / (gamma(a) * gamma(b));
            return Ok(prefactor * sum);
        }
        poch *= (a + nf) * (b + nf) / ((nf + 1.0) * (nf + 1.0)) * y;
        psi_n += 1.0 / (nf + 1.0);
        psi_a += 1.0 / (a + nf);
        psi_b += 1.0 / (b + nf);
    }
    Err(Error::SeriesNonconvergent(format!(
        "logarithmic 2F1 connection did not converge at x = {x}"
    )))
}

/// Secondary spherical function
/// `Gamma(s/2 + m/4) / Gamma(s+1) * x^{s/2 + m/4}
///  * F(s/2 + m/4, s/2 - m/4 + 1, s + 1; x)` at `x = qu / qu_perp`.
pub fn secondary_spherical(qu: f64, qu_perp: f64, s: Complex64, m: i64) -> Result<Complex64> {
    if m % 2 != 0 {
        return Err(Error::DomainError(format!("m = {m} must be even")));
    }
    if qu_perp.is_nan() || qu_perp <= 0.0 {
        return Err(Error::DomainError("qu_perp must be positive".into()));
    }
    let x = qu / qu_perp;
    if x.is_nan() || x <= 0.0 || x > 1.0 {
        return Err(Error::DomainError(format!(
            "x = qu/qu_perp = {x} outside (0, 1]"
        )));
    }
    let a = s / 2.0 + m as f64 / 4.0;
    let b = s / 2.0 - m as f64 / 4.0 + 1.0;
    let c = s + 1.0;
    let f = gauss_2f1(a, b, c, x)?;
    let prefactor = gamma(a) / gamma(c);
    let xa = (a * x.ln()).exp();
    Ok(prefactor * xa * f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn elementary_identities() {
        // 2F1(1, 1; 1; x) = 1/(1-x)
        for &x in &[0.1, 0.3, 0.49] {
            let f = gauss_2f1(c(1.0), c(1.0), c(1.0), x).unwrap();
            assert!((f.re - 1.0 / (1.0 - x)).abs() < 1e-13);
        }
        // 2F1(a, b; b; x) = (1-x)^{-a}
        let f = gauss_2f1(c(0.7), c(2.3), c(2.3), 0.4).unwrap();
        assert!((f.re - (1.0f64 - 0.4).powf(-0.7)).abs() < 1e-13);
    }

    #[test]
    fn log_case_against_direct_series() {
        // c = a + b exactly: compare the connection formula against the
        // direct series, which still converges (slowly) for x < 1
        for &x in &[0.6, 0.75] {
            for &(a, b) in &[(1.5, 1.5), (2.0, 1.0), (0.75, 1.25)] {
                let direct = series_2f1(c(a), c(b), c(a + b), x).unwrap();
                let log_form = log_case_near_one(c(a), c(b), x).unwrap();
                assert!(
                    (direct - log_form).norm() < 1e-11 * direct.norm(),
                    "a={a} b={b} x={x}: {direct} vs {log_form}"
                );
            }
        }
    }

    #[test]
    fn secondary_spherical_small_x_asymptotics() {
        // phi ~ Gamma(a)/Gamma(c) x^a as x -> 0+
        let s = c(2.0);
        let m = 2;
        let x = 1e-8;
        let v = secondary_spherical(x, 1.0, s, m).unwrap();
        let a = s / 2.0 + 0.5;
        let expected = gamma(a) / gamma(s + 1.0) * (a * x.ln()).exp();
        // F(...; x) = 1 + O(x), so the match is first-order in x
        assert!((v - expected).norm() < 1e-7 * expected.norm());
    }

    #[test]
    fn secondary_spherical_finite_at_quarter() {
        let v = secondary_spherical(1.0, 4.0, c(2.0), 2).unwrap();
        assert!(v.norm().is_finite() && v.norm() > 0.0);
        // exact-rational oracle: a = 3/2, b = 3/2, c = 3 at x = 1/4;
        // partial sums of the series with rational terms, bounded tail
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        for n in 0..200 {
            let nf = n as f64;
            term *= (1.5 + nf) * (1.5 + nf) / ((3.0 + nf) * (nf + 1.0)) * 0.25;
            sum += term;
        }
        let pre = gamma(c(1.5)) / gamma(c(3.0));
        let expected = pre.re * 0.25f64.powf(1.5) * sum;
        assert!((v.re - expected).abs() < 1e-12 * expected.abs());
    }

    #[test]
    fn domain_checks() {
        assert!(secondary_spherical(1.0, 1.0, c(2.0), 3).is_err());
        assert!(secondary_spherical(2.0, 1.0, c(2.0), 2).is_err());
        assert!(secondary_spherical(1.0, -1.0, c(2.0), 2).is_err());
    }
}
