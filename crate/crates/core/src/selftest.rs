//! Seeded invariant battery behind the `selftest` subcommand: a condensed
//! run of the property checks that guard every module.

use crate::exact::{laurent_special_values, loglin_reduce_eq, LaurentPoly, LogLinear, Rat};
use crate::green;
use crate::hermdiff;
use crate::localfield::lattice::lattice_canonicalize;
use crate::localfield::padic::{additive_character, p_fractional_part, val_and_eta, PadicCtx};
use crate::localfield::quad::QuadElem;
use crate::orbint;
use crate::orbits::{self, sampling};
use crate::weil::{check_k_invariance, SchwartzFn};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub struct CheckResult {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// Experimental observations reported alongside the pass/fail checks; they
/// never gate the run.
pub struct Observation {
    pub name: &'static str,
    pub detail: String,
}

/// Rank-2 tally of the side sign against vanishing of the normalized
/// value. In rank 1 these agree exactly on integral data; in rank 2 the
/// side convention is calibrated only against rank 1, so the relation is
/// observed, not asserted.
pub fn observe_rank2_vanishing(seed: u64, samples: usize) -> Observation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = PadicCtx::new(3, 1, 0).expect("context");
    let mut agree = 0usize;
    let mut total = 0usize;
    while total < samples {
        let x = sampling::random_rs_orbit(&mut rng, &ctx, 2);
        if !x.gamma.is_integral().unwrap_or(false) {
            continue;
        }
        let Ok(r) = orbint::orb_lattice_sum(&x) else { continue };
        let Ok((_, side)) = orbits::transfer_factor_and_side(&x) else { continue };
        if (side == -1) == r.value0.is_zero() {
            agree += 1;
        }
        total += 1;
    }
    Observation {
        name: "rank2_vanishing_vs_side",
        detail: format!("{agree}/{total} samples had value0 = 0 exactly when side = -1"),
    }
}

type Check = (&'static str, fn(&mut ChaCha8Rng) -> Result<(), String>);

pub fn run_all(seed: u64) -> Vec<CheckResult> {
    let checks: Vec<Check> = vec![
        ("laurent_ring_and_leibniz", laurent_ring_and_leibniz),
        ("loglin_equivalence", loglin_equivalence),
        ("eta_and_norms", eta_and_norms),
        ("additive_character_additivity", additive_character_additivity),
        ("lattice_canonical_form", lattice_canonical_form),
        ("rank1_oracle_identity", rank1_oracle_identity),
        ("rank1_derivative_dictionary", rank1_derivative_dictionary),
        ("lattice_sum_rank1", lattice_sum_rank1),
        ("orbit_invariance_rank2", orbit_invariance_rank2),
        ("vanishing_matches_side", vanishing_matches_side),
        ("cm_crosscheck_sweep", cm_crosscheck_sweep),
        ("diff_parity", diff_parity),
        ("arch_quadrature_agreement", arch_quadrature_agreement),
        ("whittaker_and_ei", whittaker_and_ei),
        ("green_radial_identities", green_radial_identities),
        ("weil_invariance", weil_invariance),
    ];
    checks
        .into_iter()
        .map(|(name, f)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match f(&mut rng) {
                Ok(()) => CheckResult { name, ok: true, detail: String::new() },
                Err(detail) => CheckResult { name, ok: false, detail },
            }
        })
        .collect()
}

fn fail(msg: impl Into<String>) -> Result<(), String> {
    Err(msg.into())
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for _ in 0..rng.gen_range(0..5) {
        p.add_term(rng.gen_range(-4..4), Rat::from_int(rng.gen_range(-5..6)));
    }
    p
}

fn laurent_ring_and_leibniz(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..40 {
        let p = random_poly(rng);
        let q_poly = random_poly(rng);
        let q = [3u64, 5, 9][rng.gen_range(0..3)];
        let (vp, dp) = laurent_special_values(&p, q);
        let (vq, dq) = laurent_special_values(&q_poly, q);
        let (vs, ds) = laurent_special_values(&(p.clone() + q_poly.clone()), q);
        if vs != vp.clone() + vq.clone() || ds != dp.clone() + dq.clone() {
            return fail("additivity of special values failed");
        }
        let (vm, dm) = laurent_special_values(&(p * q_poly), q);
        if vm != vp.clone() * vq.clone() {
            return fail("multiplicativity of values failed");
        }
        let leibniz = dq.scale(&vp) + dp.scale(&vq);
        if dm != leibniz {
            return fail("Leibniz rule failed");
        }
    }
    Ok(())
}

fn loglin_equivalence(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let s: BTreeSet<u64> = [3u64, 7].into_iter().collect();
    for _ in 0..50 {
        let x = LogLinear::from_log_term(5, Rat::from_int(rng.gen_range(-3..4)))
            + LogLinear::from_real(rng.gen_range(-1.0..1.0));
        // adding multiples of log l for l in S preserves equivalence
        let y = x.clone() + LogLinear::from_log_term(3, Rat::from_int(rng.gen_range(-9..9)));
        if !loglin_reduce_eq(&x, &y, &s) {
            return fail("S-component not quotiented out");
        }
        let z = x.clone() + LogLinear::from_log_term(5, Rat::one());
        if loglin_reduce_eq(&x, &z, &s) {
            return fail("non-S component ignored");
        }
    }
    Ok(())
}

fn eta_and_norms(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ctx = PadicCtx::new(3, 1, 0).map_err(|e| e.to_string())?;
    for _ in 0..30 {
        let a = sampling::random_base_elem(rng, &ctx, -2, 3);
        let b = sampling::random_base_elem(rng, &ctx, -2, 3);
        let (_, ea) = val_and_eta(&a).map_err(|e| e.to_string())?;
        let (_, eb) = val_and_eta(&b).map_err(|e| e.to_string())?;
        let (_, eab) = val_and_eta(&a.mul(&b)).map_err(|e| e.to_string())?;
        if eab != Some(ea.unwrap() * eb.unwrap()) {
            return fail("eta not multiplicative");
        }
        // norms land in even valuation
        let x = QuadElem::new(a, b);
        if !x.rep_is_zero() {
            let n = x.norm();
            if let Ok((_, e)) = val_and_eta(&n) {
                if e != Some(1) {
                    return fail("norm with odd valuation");
                }
            }
        }
    }
    Ok(())
}

fn additive_character_additivity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ctx = PadicCtx::new(5, 1, 1).map_err(|e| e.to_string())?;
    for _ in 0..30 {
        let x = sampling::random_base_elem(rng, &ctx, -3, 2);
        let y = sampling::random_base_elem(rng, &ctx, -3, 2);
        let px = additive_character(&x, 1).map_err(|e| e.to_string())?;
        let py = additive_character(&y, 1).map_err(|e| e.to_string())?;
        let pxy = additive_character(&x.add(&y), 1).map_err(|e| e.to_string())?;
        if pxy != p_fractional_part(&(px + py), ctx.p_big()) {
            return fail("character not additive");
        }
    }
    Ok(())
}

fn lattice_canonical_form(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ctx = PadicCtx::new(3, 1, 0).map_err(|e| e.to_string())?;
    for _ in 0..20 {
        let cols: Vec<Vec<_>> = (0..2)
            .map(|_| (0..2).map(|_| sampling::random_base_elem(rng, &ctx, 0, 2)).collect())
            .collect();
        let Ok(l) = lattice_canonicalize(&ctx, &cols) else { continue };
        // mix columns unimodularly: same form
        let k = ctx.integer(rng.gen_range(-3..4));
        let mixed = vec![
            cols[0].iter().zip(&cols[1]).map(|(a, b)| a.add(&b.mul(&k))).collect(),
            cols[1].clone(),
        ];
        let l2 = lattice_canonicalize(&ctx, &mixed).map_err(|e| e.to_string())?;
        if l != l2 {
            return fail("canonical form depends on the basis");
        }
        if l.index_exp != l.diag_exps.iter().sum::<i64>() {
            return fail("index exponent mismatch");
        }
    }
    Ok(())
}

fn rank1_oracle_identity(_rng: &mut ChaCha8Rng) -> Result<(), String> {
    for a in -4..=4 {
        for b in -4..=4 {
            for c in -4..=4 {
                if orbint::orb_rank1_split_brute(a, b, c) != orbint::orb_rank1_split(a + b - c) {
                    return fail(format!("oracle mismatch at split ({a},{b},{c})"));
                }
            }
        }
    }
    Ok(())
}

fn rank1_derivative_dictionary(_rng: &mut ChaCha8Rng) -> Result<(), String> {
    for m in (-7..=11).filter(|m| m % 2 != 0) {
        for q in [3u64, 5, 9, 27] {
            let (l, f) = crate::exact::factor_prime_power(q).unwrap();
            let (_, d) = laurent_special_values(&orbint::orb_rank1_split(m), q);
            let got = -(d.log_coeff(l) / Rat::from_int(f));
            if got != Rat::from_int(0.max((1 + m) / 2)) {
                return fail(format!("derivative dictionary failed at M={m}, q={q}"));
            }
        }
    }
    Ok(())
}

fn lattice_sum_rank1(rng: &mut ChaCha8Rng) -> Result<(), String> {
    use crate::localfield::matrix::Matrix;
    for q in [3u64, 5] {
        let ctx = PadicCtx::new(q, 1, 0).map_err(|e| e.to_string())?;
        for _ in 0..6 {
            let g = sampling::random_norm_one_scalar(rng, &ctx);
            let v1: i64 = rng.gen_range(-1..3);
            let v2: i64 = rng.gen_range(-1..3);
            let x = orbits::OrbitDatum::new(
                Matrix::from_rows(vec![vec![g]]),
                vec![ctx.pi_pow(v1)],
                vec![ctx.pi_pow(v2)],
            )
            .map_err(|e| e.to_string())?;
            let r = orbint::orb_lattice_sum(&x).map_err(|e| e.to_string())?;
            let normalized = r.poly.scale(&Rat::from_int(i64::from(r.omega)));
            if normalized != orbint::orb_rank1_split(v1 + v2) {
                return fail(format!("lattice sum != closed form at q={q}, v=({v1},{v2})"));
            }
        }
    }
    Ok(())
}

fn orbit_invariance_rank2(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let ctx = PadicCtx::new(3, 1, 0).map_err(|e| e.to_string())?;
    for _ in 0..2 {
        let x = sampling::random_rs_orbit(rng, &ctx, 2);
        let base = orbint::orb_lattice_sum(&x).map_err(|e| e.to_string())?;
        for _ in 0..3 {
            let h = sampling::random_gl(rng, &ctx, 2, 2);
            let y = orbits::group_action(&h, &x).map_err(|e| e.to_string())?;
            let moved = orbint::orb_lattice_sum(&y).map_err(|e| e.to_string())?;
            if moved.value0 != base.value0 || moved.deriv0 != base.deriv0 {
                return fail("normalized special values not orbit-invariant");
            }
        }
    }
    Ok(())
}

fn vanishing_matches_side(rng: &mut ChaCha8Rng) -> Result<(), String> {
    use crate::localfield::matrix::Matrix;
    // integral rank-1 data: the value vanishes exactly on the odd side
    let ctx = PadicCtx::new(3, 1, 0).map_err(|e| e.to_string())?;
    for _ in 0..12 {
        let g = sampling::random_norm_one_scalar(rng, &ctx);
        let v1: i64 = rng.gen_range(0..3);
        let v2: i64 = rng.gen_range(0..3);
        let x = orbits::OrbitDatum::new(
            Matrix::from_rows(vec![vec![g]]),
            vec![ctx.pi_pow(v1)],
            vec![ctx.pi_pow(v2)],
        )
        .map_err(|e| e.to_string())?;
        let r = orbint::orb_lattice_sum(&x).map_err(|e| e.to_string())?;
        let (_, side) = orbits::transfer_factor_and_side(&x).map_err(|e| e.to_string())?;
        if (side == -1) != r.value0.is_zero() {
            return fail(format!("side {side} but value0 = {}", r.value0));
        }
    }
    Ok(())
}

fn cm_crosscheck_sweep(_rng: &mut ChaCha8Rng) -> Result<(), String> {
    for v in (-7..=11).filter(|v| v % 2 != 0) {
        for q in [3, 5, 9, 27] {
            if !hermdiff::cm_factor_crosscheck(v, q).map_err(|e| e.to_string())? {
                return fail(format!("cross-check failed at v={v}, q={q}"));
            }
        }
    }
    Ok(())
}

fn diff_parity(rng: &mut ChaCha8Rng) -> Result<(), String> {
    for _ in 0..200 {
        let n = 1 + rng.gen_range(0..7);
        let fam = hermdiff::sampling::random_incoherent_family(rng, n);
        let d = hermdiff::diff_set(&fam).map_err(|e| e.to_string())?;
        if d.is_empty() || d.len() % 2 == 0 {
            return fail("Diff set not odd and non-empty");
        }
    }
    Ok(())
}

fn arch_quadrature_agreement(_rng: &mut ChaCha8Rng) -> Result<(), String> {
    for &zeta in &[1.0, -1.0, 0.5] {
        for &a in &[0.5, 1.0] {
            let cl = orbint::orb_arch(zeta, a, 0.0, 0.0).map_err(|e| e.to_string())?;
            let qv = orbint::orb_arch_quadrature(zeta, a, 0.0, 0.0, 0.0).map_err(|e| e.to_string())?;
            if (qv - cl.value).norm() > 1e-8 {
                return fail(format!("value mismatch at zeta={zeta}, a={a}"));
            }
            if zeta < 0.0 {
                let qd = orbint::orb_arch_quadrature_deriv(zeta, a, 0.0, 0.0)
                    .map_err(|e| e.to_string())?;
                if (qd - cl.deriv.unwrap()).norm() > 1e-8 {
                    return fail(format!("derivative mismatch at zeta={zeta}, a={a}"));
                }
            }
        }
    }
    Ok(())
}

fn whittaker_and_ei(_rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (xi, k, a, b, c, th) = (0.7, 3, 1.3, 0.2, 0.9, 0.4);
    let lhs = green::whittaker(xi, k, a, b + c, th).map_err(|e| e.to_string())?;
    let rhs = green::whittaker(xi, k, a, b, th).map_err(|e| e.to_string())?
        * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * xi * c);
    if (lhs - rhs).norm() > 1e-12 {
        return fail("Whittaker cocycle failed");
    }
    let r = 1e-4;
    let v = green::exp_integral(-r).map_err(|e| e.to_string())?;
    let series = green::EULER_GAMMA + r.ln() - r + r * r / 4.0 - r * r * r / 18.0;
    if (v - series).abs() > 1e-10 {
        return fail("Ei small-argument expansion failed");
    }
    Ok(())
}

fn green_radial_identities(_rng: &mut ChaCha8Rng) -> Result<(), String> {
    use std::f64::consts::PI;
    // Ei-kernel identity
    for &(a, u_norm, r) in &[(1.0, 2.0, 1.0), (0.5, 1.0, 2.0)] {
        let s0 = 1.0;
        let x = 2.0 * PI * a * r;
        let d1 = (-x).exp() / r;
        let d2 = -(-x).exp() * (x + 1.0) / (r * r);
        let got = green::radial_laplacian(d1, d2, u_norm, s0, r).map_err(|e| e.to_string())?;
        let expected = 4.0 * (-4.0 * PI * a * (u_norm + r) / 2.0 + s0) * (-x).exp();
        if (got - expected).abs() > 1e-9 * expected.abs().max(1.0) {
            return fail("radial identity for the Ei kernel failed");
        }
    }
    // eigenfunction residual at one spot
    let (s, m, u_norm) = (2.0, 2i64, 1.0);
    let s0 = m as f64 / 2.0;
    let r = 2.0;
    let qu = u_norm / 2.0;
    let phi = |rr: f64| -> f64 {
        green::secondary_spherical(qu, qu + rr / 2.0, Complex64::new(s, 0.0), m)
            .unwrap()
            .re
    };
    let got = green::radial_laplacian_fd(phi, u_norm, s0, r, 1e-3).map_err(|e| e.to_string())?;
    let expected = (s * s - s0 * s0) * phi(r);
    if (got - expected).abs() > 1e-6 * expected.abs().max(1.0) {
        return fail(format!("eigen-equation residual too large: {got} vs {expected}"));
    }
    Ok(())
}

fn weil_invariance(_rng: &mut ChaCha8Rng) -> Result<(), String> {
    for q in [3u64, 5] {
        for d in [0i64, 1] {
            let ctx = PadicCtx::new(q, 1, d).map_err(|e| e.to_string())?;
            let phi = SchwartzFn::lattice_indicator(&ctx, 0, -d).map_err(|e| e.to_string())?;
            if !check_k_invariance(&phi, d).map_err(|e| e.to_string())? {
                return fail(format!("expected invariance at q={q}, d={d}"));
            }
        }
    }
    let ctx = PadicCtx::new(3, 1, 0).map_err(|e| e.to_string())?;
    let phi = SchwartzFn::lattice_indicator(&ctx, 0, 1).map_err(|e| e.to_string())?;
    if check_k_invariance(&phi, 0).map_err(|e| e.to_string())? {
        return fail("perturbed lattice unexpectedly invariant");
    }
    Ok(())
}
