//! C ABI for the exact orbital-integral library.
//!
//! Conventions:
//! - every fallible call returns an [`AflStatus`]; outputs go through
//!   pointers supplied by the caller;
//! - exact rationals and log-linear numbers cross the boundary as
//!   NUL-terminated strings (`"num/den"` resp. a small JSON document)
//!   written into caller-owned buffers, with `BufferTooSmall` signalled
//!   when they do not fit;
//! - Laurent polynomials are opaque handles created and freed by this
//!   library; handles are not thread-safe for concurrent mutation.

use afl_core::exact::{laurent_special_values, LaurentPoly, Rat};
use afl_core::localfield::padic::PadicCtx;
use afl_core::orbits::OrbitDatumJson;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status codes of every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AflStatus {
    Ok = 0,
    /// Bad argument (domain error, parse error, null pointer).
    InvalidArgument = 2,
    /// Precision exhausted or enumeration box unstable; retry with more.
    Unstable = 3,
    /// Numerical evaluation failed (quadrature or series did not converge).
    NumericError = 4,
    /// Output buffer too small for the requested string.
    BufferTooSmall = 5,
    /// Unexpected internal failure.
    Internal = 6,
}

fn status_of(e: &afl_core::Error) -> AflStatus {
    use afl_core::Error::*;
    match e {
        PrecisionExhausted(_) | BoxUnstable(_) => AflStatus::Unstable,
        QuadratureNonconvergent(_) | SeriesNonconvergent(_) => AflStatus::NumericError,
        _ => AflStatus::InvalidArgument,
    }
}

/// Opaque Laurent polynomial in `X = q^{-s}`.
pub struct AflPoly(LaurentPoly);

fn guard<F: FnOnce() -> AflStatus>(f: F) -> AflStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => AflStatus::Internal,
    }
}

unsafe fn write_str(buf: *mut c_char, len: usize, s: &str) -> AflStatus {
    if buf.is_null() {
        return AflStatus::InvalidArgument;
    }
    let bytes = s.as_bytes();
    if bytes.len() + 1 > len {
        return AflStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
    *buf.add(bytes.len()) = 0;
    AflStatus::Ok
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, AflStatus> {
    if ptr.is_null() {
        return Err(AflStatus::InvalidArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| AflStatus::InvalidArgument)
}

/// Create an empty polynomial. Free with [`afl_poly_free`].
#[no_mangle]
pub extern "C" fn afl_poly_new() -> *mut AflPoly {
    Box::into_raw(Box::new(AflPoly(LaurentPoly::zero())))
}

/// # Safety
/// `poly` must be a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn afl_poly_free(poly: *mut AflPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Add `coeff * X^exp`; `coeff` is a rational string like `"-3/2"`.
///
/// # Safety
/// `poly` must be a live handle; `coeff` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn afl_poly_add_term(
    poly: *mut AflPoly,
    exp: i64,
    coeff: *const c_char,
) -> AflStatus {
    guard(|| {
        let Some(poly) = poly.as_mut() else { return AflStatus::InvalidArgument };
        let Ok(text) = read_str(coeff) else { return AflStatus::InvalidArgument };
        match text.parse::<Rat>() {
            Ok(c) => {
                poly.0.add_term(exp, c);
                AflStatus::Ok
            }
            Err(_) => AflStatus::InvalidArgument,
        }
    })
}

/// Number of stored (nonzero) terms.
///
/// # Safety
/// `poly` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn afl_poly_num_terms(poly: *const AflPoly) -> usize {
    poly.as_ref().map_or(0, |p| p.0.num_terms())
}

/// Coefficient of `X^exp` as a rational string.
///
/// # Safety
/// `poly` must be a live handle; `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn afl_poly_coeff(
    poly: *const AflPoly,
    exp: i64,
    buf: *mut c_char,
    len: usize,
) -> AflStatus {
    guard(|| {
        let Some(p) = poly.as_ref() else { return AflStatus::InvalidArgument };
        write_str(buf, len, &p.0.coeff(exp).to_string())
    })
}

/// Value and derivative at `s = 0` for residue cardinality `q`. The value
/// is a rational string; the derivative a JSON log-linear document
/// `{"real": 0.0, "logs": {"3": "-2"}}`.
///
/// # Safety
/// `poly` must be a live handle; both buffers must have the stated sizes.
#[no_mangle]
pub unsafe extern "C" fn afl_poly_special_values(
    poly: *const AflPoly,
    q: u64,
    value_buf: *mut c_char,
    value_len: usize,
    deriv_buf: *mut c_char,
    deriv_len: usize,
) -> AflStatus {
    guard(|| {
        let Some(p) = poly.as_ref() else { return AflStatus::InvalidArgument };
        if afl_core::exact::factor_prime_power(q).is_none() {
            return AflStatus::InvalidArgument;
        }
        let (v, d) = laurent_special_values(&p.0, q);
        let st = write_str(value_buf, value_len, &v.to_string());
        if st != AflStatus::Ok {
            return st;
        }
        write_str(deriv_buf, deriv_len, &serde_json::to_string(&d).unwrap())
    })
}

/// Rank-one closed form with `M = v(c^{-1} zeta)` into `out`.
///
/// # Safety
/// `out` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn afl_orb_rank1_split(m: i64, out: *mut AflPoly) -> AflStatus {
    guard(|| {
        let Some(out) = out.as_mut() else { return AflStatus::InvalidArgument };
        out.0 = afl_core::orbint::orb_rank1_split(m);
        AflStatus::Ok
    })
}

/// Brute coset-sum oracle over the given valuation split into `out`.
///
/// # Safety
/// `out` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn afl_orb_rank1_split_brute(
    v_u1: i64,
    v_u2: i64,
    v_c: i64,
    out: *mut AflPoly,
) -> AflStatus {
    guard(|| {
        let Some(out) = out.as_mut() else { return AflStatus::InvalidArgument };
        out.0 = afl_core::orbint::orb_rank1_split_brute(v_u1, v_u2, v_c);
        AflStatus::Ok
    })
}

/// Hermitian-side rank-one value: 1 iff `v >= 0` and even.
#[no_mangle]
pub extern "C" fn afl_orb_rank1_hermitian(v_delta_zeta: i64) -> i32 {
    if afl_core::orbint::orb_rank1_hermitian(v_delta_zeta).is_zero() {
        0
    } else {
        1
    }
}

/// Degree-factor vs derivative cross-check at odd `v` and prime power `q`.
///
/// # Safety
/// `ok` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afl_cm_factor_crosscheck(v: i64, q: u64, ok: *mut bool) -> AflStatus {
    guard(|| {
        let Some(ok) = ok.as_mut() else { return AflStatus::InvalidArgument };
        match afl_core::hermdiff::cm_factor_crosscheck(v, q) {
            Ok(b) => {
                *ok = b;
                AflStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Lattice-sum orbital integral of an orbit datum given as JSON (the same
/// schema as the CLI); the result record is written as JSON.
///
/// # Safety
/// `orbit_json` must be NUL-terminated; `buf` must point to `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn afl_orb_lattice_sum_json(
    orbit_json: *const c_char,
    q: u64,
    precision: i64,
    buf: *mut c_char,
    len: usize,
) -> AflStatus {
    guard(|| {
        let Ok(text) = read_str(orbit_json) else { return AflStatus::InvalidArgument };
        let Some((p, f)) = afl_core::exact::factor_prime_power(q) else {
            return AflStatus::InvalidArgument;
        };
        let parsed: OrbitDatumJson = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(_) => return AflStatus::InvalidArgument,
        };
        let ctx = match PadicCtx::with_precision(p, f as usize, 0, precision) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        let orbit = match parsed.to_orbit(&ctx) {
            Ok(o) => o,
            Err(e) => return status_of(&e),
        };
        match afl_core::orbint::orb_lattice_sum(&orbit) {
            Ok(r) => write_str(buf, len, &serde_json::to_string(&r).unwrap()),
            Err(e) => status_of(&e),
        }
    })
}

/// Diff set of an incoherent family given as JSON; the sorted place ids are
/// written as a JSON array.
///
/// # Safety
/// `family_json` must be NUL-terminated; `buf` must point to `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn afl_diff_set_json(
    family_json: *const c_char,
    buf: *mut c_char,
    len: usize,
) -> AflStatus {
    guard(|| {
        let Ok(text) = read_str(family_json) else { return AflStatus::InvalidArgument };
        let fam: afl_core::hermdiff::IncoherentFamily = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(_) => return AflStatus::InvalidArgument,
        };
        match afl_core::hermdiff::diff_set(&fam) {
            Ok(d) => {
                let ids: Vec<&String> = d.iter().collect();
                write_str(buf, len, &serde_json::to_string(&ids).unwrap())
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Rank-one hermitian lattice dual exponents. `*has_selfdual` reports
/// whether a self-dual lattice exists (even scale valuation).
///
/// # Safety
/// All output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn afl_rank1_dual(
    k: i64,
    v_beta: i64,
    dual_k: *mut i64,
    selfdual_k: *mut i64,
    has_selfdual: *mut bool,
) -> AflStatus {
    guard(|| {
        let (Some(dual_k), Some(selfdual_k), Some(has_selfdual)) =
            (dual_k.as_mut(), selfdual_k.as_mut(), has_selfdual.as_mut())
        else {
            return AflStatus::InvalidArgument;
        };
        let (d, sd) = afl_core::hermdiff::rank1_dual_and_selfdual(
            afl_core::hermdiff::Rank1HermLattice { k, v_beta },
        );
        *dual_k = d;
        *has_selfdual = sd.is_some();
        *selfdual_k = sd.unwrap_or(0);
        AflStatus::Ok
    })
}

/// Archimedean orbital integral closed form. `*has_deriv` is set when the
/// derivative is available in closed form (`zeta < 0`).
///
/// # Safety
/// All output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn afl_orb_arch(
    zeta: f64,
    a: f64,
    b: f64,
    theta: f64,
    value_re: *mut f64,
    value_im: *mut f64,
    deriv_re: *mut f64,
    deriv_im: *mut f64,
    has_deriv: *mut bool,
) -> AflStatus {
    guard(|| {
        let (Some(vre), Some(vim), Some(dre), Some(dim), Some(hd)) = (
            value_re.as_mut(),
            value_im.as_mut(),
            deriv_re.as_mut(),
            deriv_im.as_mut(),
            has_deriv.as_mut(),
        ) else {
            return AflStatus::InvalidArgument;
        };
        match afl_core::orbint::orb_arch(zeta, a, b, theta) {
            Ok(r) => {
                *vre = r.value.re;
                *vim = r.value.im;
                *hd = r.deriv.is_some();
                let d = r.deriv.unwrap_or_default();
                *dre = d.re;
                *dim = d.im;
                AflStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Quadrature oracle for the archimedean orbital integral at real `s`.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn afl_orb_arch_quadrature(
    zeta: f64,
    a: f64,
    b: f64,
    theta: f64,
    s: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> AflStatus {
    guard(|| {
        let (Some(re), Some(im)) = (out_re.as_mut(), out_im.as_mut()) else {
            return AflStatus::InvalidArgument;
        };
        match afl_core::orbint::orb_arch_quadrature(zeta, a, b, theta, s) {
            Ok(v) => {
                *re = v.re;
                *im = v.im;
                AflStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Exponential integral `Ei(x)` for `x < 0`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afl_exp_integral(x: f64, out: *mut f64) -> AflStatus {
    guard(|| {
        let Some(out) = out.as_mut() else { return AflStatus::InvalidArgument };
        match afl_core::green::exp_integral(x) {
            Ok(v) => {
                *out = v;
                AflStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Weight-`k` Whittaker function.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn afl_whittaker(
    xi: f64,
    k: i64,
    a: f64,
    b: f64,
    theta: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> AflStatus {
    guard(|| {
        let (Some(re), Some(im)) = (out_re.as_mut(), out_im.as_mut()) else {
            return AflStatus::InvalidArgument;
        };
        match afl_core::green::whittaker(xi, k, a, b, theta) {
            Ok(v) => {
                *re = v.re;
                *im = v.im;
                AflStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Secondary spherical function at `x = qu/qu_perp`, complex `s`.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn afl_secondary_spherical(
    qu: f64,
    qu_perp: f64,
    s_re: f64,
    s_im: f64,
    m: i64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> AflStatus {
    guard(|| {
        let (Some(re), Some(im)) = (out_re.as_mut(), out_im.as_mut()) else {
            return AflStatus::InvalidArgument;
        };
        match afl_core::green::secondary_spherical(
            qu,
            qu_perp,
            num_complex::Complex64::new(s_re, s_im),
            m,
        ) {
            Ok(v) => {
                *re = v.re;
                *im = v.im;
                AflStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Kudla Green kernel at majorant value `r`; `four_pi` selects the
/// alternate exponent normalization.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afl_kudla_green_r(
    r: f64,
    a: f64,
    four_pi: bool,
    out: *mut f64,
) -> AflStatus {
    guard(|| {
        let Some(out) = out.as_mut() else { return AflStatus::InvalidArgument };
        if a.is_nan() || a <= 0.0 {
            return AflStatus::InvalidArgument;
        }
        if r == 0.0 {
            *out = -a.abs().ln();
            return AflStatus::Ok;
        }
        if r < 0.0 {
            return AflStatus::InvalidArgument;
        }
        let c = if four_pi { 4.0 } else { 2.0 } * std::f64::consts::PI;
        match afl_core::green::exp_integral(-c * a * r) {
            Ok(v) => {
                *out = -v;
                AflStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Gaussian weight pair for an orthogonal splitting.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn afl_gaussian_weights(
    q_plus: f64,
    q_minus: f64,
    dim: u32,
    phi0: *mut f64,
    phi0_plus: *mut f64,
) -> AflStatus {
    guard(|| {
        let (Some(p0), Some(pp)) = (phi0.as_mut(), phi0_plus.as_mut()) else {
            return AflStatus::InvalidArgument;
        };
        let (a, b) = afl_core::green::gaussian_weights(q_plus, q_minus, dim);
        *p0 = a;
        *pp = b;
        AflStatus::Ok
    })
}

/// Invariance of the indicator `1_{pi^{s1} O x pi^{s2} O}` under the
/// compact generators at character level `d`, over the unramified field of
/// residue cardinality `p^f`.
///
/// # Safety
/// `invariant` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn afl_weil_check_invariance(
    p: u64,
    f: u32,
    d: i64,
    s1: i64,
    s2: i64,
    invariant: *mut bool,
) -> AflStatus {
    guard(|| {
        let Some(out) = invariant.as_mut() else { return AflStatus::InvalidArgument };
        let ctx = match PadicCtx::new(p, f as usize, d) {
            Ok(c) => c,
            Err(e) => return status_of(&e),
        };
        let phi = match afl_core::weil::SchwartzFn::lattice_indicator(&ctx, s1, s2) {
            Ok(v) => v,
            Err(e) => return status_of(&e),
        };
        match afl_core::weil::check_k_invariance(&phi, d) {
            Ok(b) => {
                *out = b;
                AflStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn cstring(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn buf_to_string(buf: &[c_char]) -> String {
        unsafe { CStr::from_ptr(buf.as_ptr()).to_str().unwrap().to_string() }
    }

    #[test]
    fn poly_roundtrip_and_special_values() {
        unsafe {
            let p = afl_poly_new();
            assert_eq!(afl_orb_rank1_split(3, p), AflStatus::Ok);
            assert_eq!(afl_poly_num_terms(p), 4);
            let mut coeff = [0 as c_char; 32];
            assert_eq!(afl_poly_coeff(p, -1, coeff.as_mut_ptr(), coeff.len()), AflStatus::Ok);
            assert_eq!(buf_to_string(&coeff), "-1");
            let mut value = [0 as c_char; 32];
            let mut deriv = [0 as c_char; 256];
            assert_eq!(
                afl_poly_special_values(
                    p,
                    3,
                    value.as_mut_ptr(),
                    value.len(),
                    deriv.as_mut_ptr(),
                    deriv.len()
                ),
                AflStatus::Ok
            );
            assert_eq!(buf_to_string(&value), "0");
            let d: serde_json::Value = serde_json::from_str(&buf_to_string(&deriv)).unwrap();
            assert_eq!(d["logs"]["3"], "-2");
            afl_poly_free(p);
        }
    }

    #[test]
    fn buffer_too_small_is_reported() {
        unsafe {
            let p = afl_poly_new();
            assert_eq!(afl_orb_rank1_split(0, p), AflStatus::Ok);
            let mut tiny = [0 as c_char; 1];
            assert_eq!(
                afl_poly_coeff(p, 0, tiny.as_mut_ptr(), tiny.len()),
                AflStatus::BufferTooSmall
            );
            afl_poly_free(p);
        }
    }

    #[test]
    fn brute_matches_closed_form_across_the_boundary() {
        unsafe {
            let a = afl_poly_new();
            let b = afl_poly_new();
            assert_eq!(afl_orb_rank1_split_brute(3, -1, 0, a), AflStatus::Ok);
            assert_eq!(afl_orb_rank1_split(2, b), AflStatus::Ok);
            let mut ca = [0 as c_char; 32];
            let mut cb = [0 as c_char; 32];
            for e in -3..=0 {
                afl_poly_coeff(a, e, ca.as_mut_ptr(), ca.len());
                afl_poly_coeff(b, e, cb.as_mut_ptr(), cb.len());
                assert_eq!(buf_to_string(&ca), buf_to_string(&cb));
            }
            afl_poly_free(a);
            afl_poly_free(b);
        }
    }

    #[test]
    fn scalar_entry_points() {
        unsafe {
            assert_eq!(afl_orb_rank1_hermitian(2), 1);
            assert_eq!(afl_orb_rank1_hermitian(1), 0);
            let mut ok = false;
            assert_eq!(afl_cm_factor_crosscheck(3, 9, &mut ok), AflStatus::Ok);
            assert!(ok);
            assert_eq!(
                afl_cm_factor_crosscheck(2, 9, &mut ok),
                AflStatus::InvalidArgument
            );
            let mut v = 0.0;
            assert_eq!(afl_exp_integral(-1.0, &mut v), AflStatus::Ok);
            assert!((v + 0.21938393439552027).abs() < 1e-12);
            assert_eq!(afl_exp_integral(1.0, &mut v), AflStatus::InvalidArgument);
            let (mut dual, mut sd, mut has) = (0i64, 0i64, false);
            assert_eq!(afl_rank1_dual(0, 2, &mut dual, &mut sd, &mut has), AflStatus::Ok);
            assert_eq!((dual, sd, has), (-2, -1, true));
        }
    }

    #[test]
    fn arch_and_weil_entry_points() {
        unsafe {
            let (mut vre, mut vim, mut dre, mut dim, mut has) = (0.0, 0.0, 0.0, 0.0, false);
            assert_eq!(
                afl_orb_arch(-1.0, 1.0, 0.0, 0.0, &mut vre, &mut vim, &mut dre, &mut dim, &mut has),
                AflStatus::Ok
            );
            assert_eq!(vre, 0.0);
            assert!(has);
            let (mut qre, mut qim) = (0.0, 0.0);
            assert_eq!(
                afl_orb_arch_quadrature(1.0, 1.0, 0.0, 0.0, 0.0, &mut qre, &mut qim),
                AflStatus::Ok
            );
            assert!((qre - (-2.0 * std::f64::consts::PI).exp()).abs() < 1e-10);

            let mut invariant = false;
            assert_eq!(
                afl_weil_check_invariance(3, 1, 1, 0, -1, &mut invariant),
                AflStatus::Ok
            );
            assert!(invariant);
            assert_eq!(
                afl_weil_check_invariance(3, 1, 0, 0, 1, &mut invariant),
                AflStatus::Ok
            );
            assert!(!invariant);
        }
    }

    #[test]
    fn json_entry_points() {
        unsafe {
            let orbit = cstring(r#"{"gamma":[[[["1"],["0"]]]],"u1":[["9"]],"u2":[["1"]]}"#);
            let mut buf = [0 as c_char; 1024];
            assert_eq!(
                afl_orb_lattice_sum_json(orbit.as_ptr(), 3, 40, buf.as_mut_ptr(), buf.len()),
                AflStatus::Ok
            );
            let doc: serde_json::Value = serde_json::from_str(&buf_to_string(&buf)).unwrap();
            assert_eq!(doc["value0"], "1");

            let fam = cstring(r#"{"places":[{"id":"a","split":false,"eps":1,"zeta_sign":-1}]}"#);
            assert_eq!(
                afl_diff_set_json(fam.as_ptr(), buf.as_mut_ptr(), buf.len()),
                AflStatus::Ok
            );
            assert_eq!(buf_to_string(&buf), r#"["a"]"#);
        }
    }
}
