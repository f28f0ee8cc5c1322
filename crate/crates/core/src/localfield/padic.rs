//! Elements of an unramified extension of the p-adic numbers.
//!
//! The residue degree `f` extension is realized as `Q[x]/(m(x))` for a
//! deterministically chosen monic integer polynomial `m` that is
//! irreducible modulo `p` (hence irreducible over `Q`). Every element we
//! ever construct has exact rational coordinates in the basis
//! `1, w, ..., w^{f-1}`, so field arithmetic is exact; the precision
//! exponent attached to an element only limits which comparisons may be
//! *certified*. Capped elements (`prec = Some(N)`) stand for residue
//! classes modulo `p^N`, and any query whose answer is not constant on the
//! class raises `PrecisionExhausted`.

use crate::error::{Error, Result};
use crate::exact::Rat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

/// Default working precision exponent.
pub const DEFAULT_PRECISION: i64 = 40;

/// Parameters of the local field: an unramified extension of `Q_p` of
/// residue degree `f`, with the additive character conductor exponent `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFieldSpec {
    pub p: u64,
    pub f: usize,
    pub q: u64,
    /// Conductor exponent of the additive character: trivial exactly on
    /// `p^{-d} O`.
    pub psi_conductor_exp: i64,
}

/// Shared context: modulus polynomial, trace table and the fixed
/// non-square unit for the quadratic extension on top.
#[derive(Debug)]
pub struct PadicCtx {
    pub spec: LocalFieldSpec,
    pub default_prec: i64,
    p_big: BigInt,
    /// Monic modulus `x^f + b_{f-1} x^{f-1} + ... + b_0`, stored as the
    /// lower coefficients `b_0..b_{f-1}` (empty when `f = 1`).
    modulus: Vec<BigInt>,
    /// `Tr(w^i)` for `i < f`.
    trace_pows: Vec<BigInt>,
    /// Coordinates of the chosen non-square unit.
    eps_coeffs: Vec<Rat>,
}

pub type Ctx = Arc<PadicCtx>;

impl PadicCtx {
    pub fn new(p: u64, f: usize, psi_conductor_exp: i64) -> Result<Ctx> {
        Self::with_precision(p, f, psi_conductor_exp, DEFAULT_PRECISION)
    }

    pub fn with_precision(p: u64, f: usize, psi_conductor_exp: i64, default_prec: i64) -> Result<Ctx> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidInput(format!("p = {p} must be an odd prime")));
        }
        if f == 0 {
            return Err(Error::InvalidInput("residue degree f must be >= 1".into()));
        }
        let q = (p as u128).pow(f as u32);
        let q = u64::try_from(q)
            .map_err(|_| Error::InvalidInput("residue cardinality overflows u64".into()))?;
        let modulus = find_modulus(p, f);
        let trace_pows = trace_powers(&modulus, f);
        let mut ctx = PadicCtx {
            spec: LocalFieldSpec { p, f, q, psi_conductor_exp },
            default_prec,
            p_big: BigInt::from(p),
            modulus,
            trace_pows,
            eps_coeffs: Vec::new(),
        };
        ctx.eps_coeffs = find_nonsquare_unit(&ctx);
        Ok(Arc::new(ctx))
    }

    pub fn p_big(&self) -> &BigInt {
        &self.p_big
    }

    pub fn f(&self) -> usize {
        self.spec.f
    }

    /// `p^k` as an exact rational, any sign of `k`.
    pub fn p_pow(&self, k: i64) -> Rat {
        Rat::from_int(self.p_big.clone()).pow(k)
    }
}

/// A capped-precision element of the unramified extension.
#[derive(Clone)]
pub struct PadicElem {
    ctx: Ctx,
    /// Exact rational coordinates in the power basis, length `f`.
    coeffs: Vec<Rat>,
    /// `None` means exactly known; `Some(n)` means known modulo `p^n`.
    prec: Option<i64>,
}

/// Certified valuation of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Val {
    Finite(i64),
    /// Exactly zero.
    Infinite,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Val::Infinite)
    }
}

impl PadicElem {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Representative is identically zero (for capped elements this means
    /// "zero at the stored precision").
    pub fn rep_is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Certified exact zero.
    pub fn is_exactly_zero(&self) -> bool {
        self.is_exact() && self.rep_is_zero()
    }

    /// Minimal p-adic valuation over the rational coordinates, `None` when
    /// the representative is zero. This is the exact valuation of the
    /// representative because the power basis is an integral basis.
    fn rep_valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .filter_map(|c| c.valuation(&self.ctx.p_big))
            .min()
    }

    /// Certified valuation. Errors when the cap hides the answer.
    pub fn valuation(&self) -> Result<Val> {
        match (self.rep_valuation(), self.prec) {
            (None, None) => Ok(Val::Infinite),
            (None, Some(n)) => Err(Error::PrecisionExhausted(format!(
                "element is O(p^{n}), valuation undetermined"
            ))),
            (Some(v), Some(n)) if v >= n => Err(Error::PrecisionExhausted(format!(
                "valuation >= precision cap {n}"
            ))),
            (Some(v), _) => Ok(Val::Finite(v)),
        }
    }

    /// True when the element is certifiably integral (valuation >= 0 or
    /// zero within precision, with a nonnegative cap).
    pub fn is_integral(&self) -> Result<bool> {
        match self.rep_valuation() {
            Some(v) if v < 0 => Ok(false),
            Some(_) => Ok(true),
            None if self.is_exact() => Ok(true),
            None => {
                let n = self.prec.unwrap();
                if n >= 0 {
                    Ok(true)
                } else {
                    Err(Error::PrecisionExhausted(format!(
                        "cannot certify integrality at precision {n}"
                    )))
                }
            }
        }
    }

    fn combine_prec(&self, rhs: &PadicElem) -> Option<i64> {
        match (self.prec, rhs.prec) {
            (None, None) => None,
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (Some(a), Some(b)) => Some(a.min(b)),
        }
    }

    pub fn add(&self, rhs: &PadicElem) -> PadicElem {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        PadicElem { ctx: self.ctx.clone(), coeffs, prec: self.combine_prec(rhs) }
    }

    pub fn sub(&self, rhs: &PadicElem) -> PadicElem {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> PadicElem {
        PadicElem {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, rhs: &PadicElem) -> PadicElem {
        let f = self.ctx.f();
        // Precision of a product p^{v1} u1 * p^{v2} u2 capped at
        // min(v1 + n2, v2 + n1) absolute digits.
        let prec = match (self.prec, rhs.prec) {
            (None, None) => None,
            _ => {
                let v1 = self.rep_valuation().unwrap_or_else(|| self.prec.unwrap_or(0));
                let v2 = rhs.rep_valuation().unwrap_or_else(|| rhs.prec.unwrap_or(0));
                let n1 = self.prec.unwrap_or(i64::MAX / 4);
                let n2 = rhs.prec.unwrap_or(i64::MAX / 4);
                Some((v1 + n2).min(v2 + n1))
            }
        };
        if f == 1 {
            return PadicElem {
                ctx: self.ctx.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
                prec,
            };
        }
        let mut raw = vec![Rat::zero(); 2 * f - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        let coeffs = reduce_mod_modulus(raw, &self.ctx);
        PadicElem { ctx: self.ctx.clone(), coeffs, prec }
    }

    /// Exact inverse; the representative must be nonzero.
    pub fn inv(&self) -> Result<PadicElem> {
        if self.rep_is_zero() {
            return Err(Error::SingularInput("inverse of (approximately) zero".into()));
        }
        let inv_coeffs = invert_mod_modulus(&self.coeffs, &self.ctx);
        // Inverting p^v u known mod p^{v+n} yields p^{-v} u^{-1} known mod
        // p^{-v+n}.
        let prec = match self.prec {
            None => None,
            Some(n) => {
                let v = self.rep_valuation().unwrap();
                Some(n - 2 * v)
            }
        };
        Ok(PadicElem { ctx: self.ctx.clone(), coeffs: inv_coeffs, prec })
    }

    pub fn div(&self, rhs: &PadicElem) -> Result<PadicElem> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn scale(&self, c: &Rat) -> PadicElem {
        PadicElem {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            prec: self.prec,
        }
    }

    pub fn pow(&self, k: u32) -> PadicElem {
        let mut acc = self.ctx.one();
        let mut sq = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Trace down to `Q_p`, an exact rational.
    pub fn trace(&self) -> Rat {
        let mut acc = Rat::zero();
        for (c, t) in self.coeffs.iter().zip(&self.ctx.trace_pows) {
            acc += c * &Rat::from_int(t.clone());
        }
        acc
    }

    /// Re-cap the element at absolute precision `n` (only lowers).
    pub fn with_precision(&self, n: i64) -> PadicElem {
        let prec = match self.prec {
            None => Some(n),
            Some(m) => Some(m.min(n)),
        };
        PadicElem { ctx: self.ctx.clone(), coeffs: self.coeffs.clone(), prec }
    }

    /// Equality of residue classes, certified at the joint precision.
    pub fn eq_at_precision(&self, rhs: &PadicElem) -> bool {
        self.sub(rhs).rep_is_zero()
    }
}

impl PartialEq for PadicElem {
    fn eq(&self, other: &Self) -> bool {
        self.eq_at_precision(other)
    }
}

impl fmt::Debug for PadicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Padic(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ({c})*w^{i}")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        match self.prec {
            Some(n) => write!(f, " + O(p^{n}))"),
            None => write!(f, ")"),
        }
    }
}

impl fmt::Display for PadicElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl PadicCtx {
    pub fn zero(self: &Ctx) -> PadicElem {
        PadicElem { ctx: self.clone(), coeffs: vec![Rat::zero(); self.f()], prec: None }
    }

    pub fn one(self: &Ctx) -> PadicElem {
        self.integer(1)
    }

    pub fn integer(self: &Ctx, n: i64) -> PadicElem {
        self.rational(Rat::from_int(n))
    }

    pub fn rational(self: &Ctx, r: Rat) -> PadicElem {
        let mut coeffs = vec![Rat::zero(); self.f()];
        coeffs[0] = r;
        PadicElem { ctx: self.clone(), coeffs, prec: None }
    }

    /// Element from power-basis coordinates (length must be `f`).
    pub fn from_coeffs(self: &Ctx, coeffs: Vec<Rat>) -> Result<PadicElem> {
        if coeffs.len() != self.f() {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates, got {}",
                self.f(),
                coeffs.len()
            )));
        }
        Ok(PadicElem { ctx: self.clone(), coeffs, prec: None })
    }

    /// The generator `w` of the residue-degree-`f` extension.
    pub fn generator(self: &Ctx) -> PadicElem {
        let mut coeffs = vec![Rat::zero(); self.f()];
        if self.f() == 1 {
            coeffs[0] = Rat::one();
        } else {
            coeffs[1] = Rat::one();
        }
        PadicElem { ctx: self.clone(), coeffs, prec: None }
    }

    /// The fixed non-square unit used to present the quadratic extension.
    pub fn eps(self: &Ctx) -> PadicElem {
        PadicElem { ctx: self.clone(), coeffs: self.eps_coeffs.clone(), prec: None }
    }

    /// `p^k`.
    pub fn pi_pow(self: &Ctx, k: i64) -> PadicElem {
        self.rational(self.p_pow(k))
    }
}

/// Valuation and unramified quadratic character value `eta = (-1)^v`.
///
/// Returns `(Infinite, None)` for exact zero.
pub fn val_and_eta(x: &PadicElem) -> Result<(Val, Option<i32>)> {
    match x.valuation()? {
        Val::Infinite => Ok((Val::Infinite, None)),
        Val::Finite(v) => Ok((Val::Finite(v), Some(if v % 2 == 0 { 1 } else { -1 }))),
    }
}

/// Additive character phase: returns `r` in `[0,1)` with value
/// `e^{2 pi i r}`, for the character of conductor exponent `d` (trivial
/// exactly on `p^{-d} O`). Concretely `r` is the p-power fractional part of
/// `p^d Tr(x)`.
pub fn additive_character(x: &PadicElem, d: i64) -> Result<Rat> {
    if let Some(n) = x.precision() {
        // Perturbing x by O(p^n) perturbs p^d Tr(x) by O(p^{n+d}).
        if n + d < 0 {
            return Err(Error::PrecisionExhausted(format!(
                "character level {d} needs precision >= {}",
                -d
            )));
        }
    }
    let t = x.trace() * x.ctx().p_pow(d);
    Ok(p_fractional_part(&t, x.ctx().p_big()))
}

/// p-power fractional part of a rational: the unique `r` in `[0,1)` with
/// p-power denominator such that `t - r` has no `p` in its denominator.
pub fn p_fractional_part(t: &Rat, p: &BigInt) -> Rat {
    if t.is_zero() {
        return Rat::zero();
    }
    let m = -t.valuation(p).unwrap();
    if m <= 0 {
        return Rat::zero();
    }
    let pm = p.pow(u32::try_from(m).unwrap());
    // t = a / (b' p^m) with p coprime to b'; r = a * inv(b') mod p^m / p^m.
    let a = t.numer();
    let bp = t.denom();
    let b_unit = bp / &pm;
    let inv = mod_inverse(&b_unit, &pm);
    let num = ((a * inv) % &pm + &pm) % &pm;
    Rat::new(num, pm)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    // Extended Euclid; inputs coprime by construction.
    let (mut r0, mut r1) = (m.clone(), ((a % m) + m) % m);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    assert!(r0.is_one(), "inputs not coprime");
    ((t0 % m) + m) % m
}

fn reduce_mod_modulus(mut raw: Vec<Rat>, ctx: &Ctx) -> Vec<Rat> {
    let f = ctx.f();
    // x^f = -(b_{f-1} x^{f-1} + ... + b_0)
    for i in (f..raw.len()).rev() {
        let lead = std::mem::replace(&mut raw[i], Rat::zero());
        if lead.is_zero() {
            continue;
        }
        for (j, b) in ctx.modulus.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let t = &lead * &Rat::from_int(b.clone());
            raw[i - f + j] -= t;
        }
    }
    raw.truncate(f);
    raw
}

/// Inverse in `Q[x]/(m)` via the extended Euclidean algorithm over `Q[x]`.
fn invert_mod_modulus(coeffs: &[Rat], ctx: &Ctx) -> Vec<Rat> {
    let f = ctx.f();
    if f == 1 {
        return vec![coeffs[0].recip()];
    }
    // m(x) as a full coefficient vector (monic).
    let mut m_poly: Vec<Rat> = ctx.modulus.iter().map(|b| Rat::from_int(b.clone())).collect();
    m_poly.push(Rat::one());
    let a_poly: Vec<Rat> = coeffs.to_vec();

    let (mut r0, mut r1) = (m_poly, trim(a_poly));
    let (mut t0, mut t1) = (vec![], vec![Rat::one()]);
    while !r1.is_empty() {
        let (q, rem) = poly_divmod(&r0, &r1);
        r0 = std::mem::replace(&mut r1, trim(rem));
        let qt1 = poly_mul(&q, &t1);
        let t2 = poly_sub(&t0, &qt1);
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r0 is a nonzero constant (m irreducible over Q).
    assert_eq!(r0.len(), 1, "modulus not irreducible or zero input");
    let c = r0[0].recip();
    let mut out: Vec<Rat> = t0.iter().map(|x| x * &c).collect();
    out.resize(f, Rat::zero());
    out
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Rat::is_zero) {
        p.pop();
    }
    p
}

fn poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    if num.len() < den.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rat::zero(); num.len() - den.len() + 1];
    let lead = den.last().unwrap();
    for i in (0..quot.len()).rev() {
        let c = &rem[i + den.len() - 1] / lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            let t = &c * d;
            rem[i + j] -= t;
        }
        quot[i] = c;
    }
    rem.truncate(den.len().saturating_sub(1));
    (trim(quot), rem)
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y.clone();
    }
    trim(out)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// --- residue-field helpers (integer polynomials modulo p) ---

fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut raw = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            raw[i + j] = (raw[i + j] + x * y) % p;
        }
    }
    // reduce modulo monic m
    let deg_m = m.len() - 1;
    for i in (deg_m..raw.len()).rev() {
        let c = raw[i];
        if c == 0 {
            continue;
        }
        raw[i] = 0;
        for (j, &mc) in m.iter().enumerate().take(deg_m) {
            raw[i - deg_m + j] = (raw[i - deg_m + j] + c * (p - mc % p)) % p;
        }
    }
    raw.truncate(deg_m);
    fp_trim(raw)
}

fn fp_powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut sq = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mulmod(&acc, &sq, m, p);
        }
        e >>= 1;
        if e > 0 {
            sq = fp_mulmod(&sq, &sq, m, p);
        }
    }
    acc
}

fn fp_gcd(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut r0, mut r1) = (a, b);
    while !r1.is_empty() {
        // r0 mod r1 with r1 made monic on the fly
        let lead = *r1.last().unwrap();
        let lead_inv = mod_pow_u64(lead, p - 2, p);
        let monic: Vec<u64> = r1.iter().map(|&c| c * lead_inv % p).collect();
        let mut rem = r0.clone();
        while rem.len() >= monic.len() && !rem.is_empty() {
            let c = *rem.last().unwrap();
            if c == 0 {
                rem.pop();
                continue;
            }
            let shift = rem.len() - monic.len();
            for (j, &mc) in monic.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + c * (p - mc % p)) % p;
            }
            rem = fp_trim(rem);
        }
        r0 = std::mem::replace(&mut r1, fp_trim(rem));
    }
    r0
}

fn mod_pow_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Irreducibility over `F_p` via the distinct-degree criterion.
fn fp_is_irreducible(m: &[u64], p: u64) -> bool {
    let f = m.len() - 1;
    let x = vec![0u64, 1];
    // x^{p^f} == x mod m
    let mut xp = x.clone();
    for _ in 0..f {
        xp = fp_powmod(&xp, p as u128, m, p);
    }
    let diff = fp_sub(&xp, &x, p);
    if !diff.is_empty() {
        return false;
    }
    // gcd(x^{p^k} - x, m) trivial for k < f
    let mut xpk = x.clone();
    for _ in 0..f.saturating_sub(1) {
        xpk = fp_powmod(&xpk, p as u128, m, p);
        let g = fp_gcd(m.to_vec(), fp_sub(&xpk, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, &x) in a.iter().enumerate() {
        out[i] = x % p;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] = (out[i] + p - y % p) % p;
    }
    fp_trim(out)
}

/// Deterministic modulus choice: the lexicographically first monic
/// `x^f + b_{f-1} x^{f-1} + ... + b_0` with digits in `[0, p)` that is
/// irreducible modulo `p`. Monic integer polynomials irreducible mod `p`
/// are irreducible over `Q`.
fn find_modulus(p: u64, f: usize) -> Vec<BigInt> {
    if f == 1 {
        return vec![];
    }
    let mut digits = vec![0u64; f];
    loop {
        let mut m: Vec<u64> = digits.clone();
        m.push(1);
        if fp_is_irreducible(&m, p) {
            return digits.iter().map(|&d| BigInt::from(d)).collect();
        }
        // increment base-p counter
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < f, "no irreducible polynomial found (impossible)");
        }
    }
}

/// `Tr(w^i)` for `i < f` by Newton's identities on the monic modulus.
fn trace_powers(modulus: &[BigInt], f: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); f];
    s[0] = BigInt::from(f as i64);
    // m(x) = x^f + b_{f-1} x^{f-1} + ... + b_0 with e_k = (-1)^k b_{f-k}.
    for k in 1..f {
        let mut acc = -(BigInt::from(k as i64) * &modulus[f - k]);
        for i in 1..k {
            let term = &modulus[f - i] * &s[k - i];
            acc -= term;
        }
        s[k] = acc;
    }
    s
}

/// Deterministic non-square unit: first try the integers `2..p`, then
/// elements with generator involvement, testing by the Euler criterion in
/// the residue field.
fn find_nonsquare_unit(ctx: &PadicCtx) -> Vec<Rat> {
    let p = ctx.spec.p;
    let f = ctx.spec.f;
    let q = ctx.spec.q;
    if f == 1 {
        for c in 2..p {
            if mod_pow_u64(c, (p - 1) / 2, p) == p - 1 {
                return vec![Rat::from_int(c as i64)];
            }
        }
        unreachable!("F_p has non-squares for odd p");
    }
    let mut m: Vec<u64> = ctx.modulus.iter().map(big_to_u64_mod(p)).collect();
    m.push(1);
    let exp = ((q as u128) - 1) / 2;
    let is_nonsquare = |rep: &[u64]| -> bool {
        let r = fp_powmod(rep, exp, &m, p);
        // x^{(q-1)/2} = -1 for non-squares
        r == vec![p - 1]
    };
    // integer candidates
    for c in 2..p {
        if is_nonsquare(&[c]) {
            let mut coeffs = vec![Rat::zero(); f];
            coeffs[0] = Rat::from_int(c as i64);
            return coeffs;
        }
    }
    // candidates w + c, w^2 + c, ... (f even cases)
    for deg in 1..f {
        for c in 0..p {
            let mut rep = vec![0u64; deg + 1];
            rep[0] = c;
            rep[deg] = 1;
            if is_nonsquare(&fp_trim(rep.clone())) {
                let mut coeffs = vec![Rat::zero(); f];
                coeffs[0] = Rat::from_int(c as i64);
                coeffs[deg] = Rat::one();
                return coeffs;
            }
        }
    }
    unreachable!("residue field has non-squares");
}

fn big_to_u64_mod(p: u64) -> impl Fn(&BigInt) -> u64 {
    move |b: &BigInt| {
        let m = b % BigInt::from(p);
        let m = if m.is_negative() { m + BigInt::from(p) } else { m };
        num_traits::ToPrimitive::to_u64(&m).unwrap()
    }
}
