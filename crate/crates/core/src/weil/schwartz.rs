//! Finitely supported model of Schwartz functions on the split binary
//! space `V' = F0 x F0` and the Weil action of SL2 generators on them.
//!
//! A function lives on the finite window `(pi^{-N} O / pi^{M} O)^2`; it is
//! constant on `pi^M O`-cosets by construction and implicitly zero outside
//! `pi^{-N} O` in each coordinate. Values are exact cyclotomic numbers, so
//! all invariance checks are decided exactly.

use super::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::localfield::padic::{additive_character, Ctx, PadicElem};
use std::fmt;

/// Total digits allowed per coordinate window (`N + M`).
const WINDOW_CAP: i64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    /// Support exponent: the function vanishes outside `pi^{-neg} O`.
    pub neg: i64,
    /// Modulus exponent: constant on `pi^{pos} O`-cosets.
    pub pos: i64,
}

impl Window {
    fn digits(&self) -> i64 {
        self.neg + self.pos
    }

    fn cells(&self, ctx: &Ctx) -> usize {
        let per_digit = ctx.spec.q as u128;
        let mut n = 1u128;
        for _ in 0..self.digits() {
            n *= per_digit;
        }
        usize::try_from(n).expect("window too large")
    }
}

/// One coordinate coset index <-> canonical representative.
fn rep_of_index(ctx: &Ctx, w: Window, mut idx: usize) -> PadicElem {
    let f = ctx.f();
    let p = ctx.spec.p as usize;
    let digits = w.digits() as u32;
    let per_coord = (p as u128).pow(digits) as usize;
    let mut coeffs = Vec::with_capacity(f);
    for _ in 0..f {
        let c = idx % per_coord;
        idx /= per_coord;
        coeffs.push(Rat::from_int(c as i64) * ctx.p_pow(-w.neg));
    }
    ctx.from_coeffs(coeffs).unwrap()
}

/// Index of the coset of an element (must lie in `pi^{-neg} O`).
fn index_of_elem(ctx: &Ctx, w: Window, x: &PadicElem) -> Option<usize> {
    use num_traits::ToPrimitive;
    let f = ctx.f();
    let p = num_bigint::BigInt::from(ctx.spec.p);
    let digits = w.digits();
    let modulus = p.pow(u32::try_from(digits).unwrap());
    let mut idx = 0usize;
    let per_coord = (ctx.spec.p as u128).pow(digits as u32) as usize;
    let mut stride = 1usize;
    for i in 0..f {
        // digit vector of pi^{neg} x mod p^{digits}
        let scaled = &x.coeffs()[i] * &ctx.p_pow(w.neg);
        if scaled.valuation(&p).is_some_and(|v| v < 0) {
            return None; // outside the support window
        }
        if !scaled.is_zero() && !scaled.is_integer() {
            // p-integral non-integer rational: reduce mod p^digits
            let den = scaled.denom().clone();
            let inv = modinv(&den, &modulus);
            let num = ((scaled.numer() * inv) % &modulus + &modulus) % &modulus;
            idx += stride * num.to_usize().unwrap();
        } else {
            let num = ((scaled.numer() % &modulus) + &modulus) % &modulus;
            idx += stride * num.to_usize().unwrap();
        }
        stride *= per_coord;
    }
    Some(idx)
}

fn modinv(a: &num_bigint::BigInt, m: &num_bigint::BigInt) -> num_bigint::BigInt {
    use num_traits::{One, Zero};
    let (mut r0, mut r1) = (m.clone(), ((a % m) + m) % m);
    let (mut t0, mut t1) = (num_bigint::BigInt::zero(), num_bigint::BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    assert!(r0.is_one());
    ((t0 % m) + m) % m
}

#[derive(Clone)]
pub struct SchwartzFn {
    ctx: Ctx,
    pub window: Window,
    /// Row-major over (coordinate 1 index, coordinate 2 index).
    values: Vec<CycNum>,
}

/// SL2 generator kinds acting through the Weil representation.
#[derive(Debug, Clone)]
pub enum Sl2Gen {
    /// Diagonal `m(a) = diag(a, a^{-1})`.
    M(PadicElem),
    /// Upper unipotent `n(b)`.
    N(PadicElem),
    /// Lower unipotent; realized as `w^{-1} n(-b') w` with the scalar from
    /// the double transform divided out.
    NMinus(PadicElem),
    /// Weyl element (unnormalized finite Fourier transform).
    W,
}

impl SchwartzFn {
    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn zero(ctx: &Ctx, window: Window) -> Result<Self> {
        if window.digits() < 0 || window.digits() > WINDOW_CAP {
            return Err(Error::WindowOverflow(format!(
                "window ({}, {}) outside the supported range",
                window.neg, window.pos
            )));
        }
        let cells = window.cells(ctx);
        Ok(SchwartzFn {
            ctx: ctx.clone(),
            window,
            values: vec![CycNum::zero(ctx.spec.p); cells * cells],
        })
    }

    /// Indicator of `pi^{s1} O x pi^{s2} O`.
    pub fn lattice_indicator(ctx: &Ctx, s1: i64, s2: i64) -> Result<Self> {
        let neg = 0.max(-s1).max(-s2);
        let pos = 0.max(s1).max(s2);
        let window = Window { neg, pos };
        let mut f = SchwartzFn::zero(ctx, window)?;
        let cells = window.cells(ctx);
        let p_big = ctx.p_big().clone();
        let in_scale = |idx: usize, s: i64| -> bool {
            let x = rep_of_index(ctx, window, idx);
            x.coeffs()
                .iter()
                .all(|c| c.is_zero() || c.valuation(&p_big).unwrap() >= s)
        };
        let ok1: Vec<bool> = (0..cells).map(|i| in_scale(i, s1)).collect();
        let ok2: Vec<bool> = (0..cells).map(|i| in_scale(i, s2)).collect();
        for (i1, ok1) in ok1.iter().enumerate() {
            if !ok1 {
                continue;
            }
            for (i2, ok2) in ok2.iter().enumerate() {
                if *ok2 {
                    f.values[i1 * cells + i2] = CycNum::one(ctx.spec.p);
                }
            }
        }
        Ok(f)
    }

    fn cells(&self) -> usize {
        self.window.cells(&self.ctx)
    }

    pub fn value_at(&self, x1: &PadicElem, x2: &PadicElem) -> CycNum {
        let cells = self.cells();
        match (
            index_of_elem(&self.ctx, self.window, x1),
            index_of_elem(&self.ctx, self.window, x2),
        ) {
            (Some(i1), Some(i2)) => self.values[i1 * cells + i2].clone(),
            _ => CycNum::zero(self.ctx.spec.p),
        }
    }

    /// Re-express on a wider window (zero outside the old support,
    /// replicated on finer cosets).
    pub fn enlarged(&self, window: Window) -> Result<SchwartzFn> {
        if window.neg < self.window.neg || window.pos < self.window.pos {
            return Err(Error::InvalidInput("enlarged window must contain the old one".into()));
        }
        if window == self.window {
            return Ok(self.clone());
        }
        let mut out = SchwartzFn::zero(&self.ctx, window)?;
        let cells = out.cells();
        for i1 in 0..cells {
            let x1 = rep_of_index(&self.ctx, window, i1);
            for i2 in 0..cells {
                let x2 = rep_of_index(&self.ctx, window, i2);
                out.values[i1 * cells + i2] = self.value_at(&x1, &x2);
            }
        }
        Ok(out)
    }

    /// Exact equality as functions (windows unified first).
    pub fn eq_as_functions(&self, other: &SchwartzFn) -> Result<bool> {
        let window = Window {
            neg: self.window.neg.max(other.window.neg),
            pos: self.window.pos.max(other.window.pos),
        };
        let a = self.enlarged(window)?;
        let b = other.enlarged(window)?;
        Ok(a.values == b.values)
    }

    /// Proportionality test `self = c * other` for some nonzero scalar
    /// (decided by cross-multiplication, no division needed).
    pub fn proportional_to(&self, other: &SchwartzFn) -> Result<bool> {
        let window = Window {
            neg: self.window.neg.max(other.window.neg),
            pos: self.window.pos.max(other.window.pos),
        };
        let a = self.enlarged(window)?;
        let b = other.enlarged(window)?;
        let ref_idx = match (0..a.values.len()).find(|&i| !a.values[i].is_zero() || !b.values[i].is_zero()) {
            None => return Ok(true), // both zero
            Some(i) => i,
        };
        if a.values[ref_idx].is_zero() || b.values[ref_idx].is_zero() {
            return Ok(false);
        }
        let (ar, br) = (&a.values[ref_idx], &b.values[ref_idx]);
        for i in 0..a.values.len() {
            // a_i * b_ref == b_i * a_ref
            if a.values[i].mul(br) != b.values[i].mul(ar) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for SchwartzFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.cells();
        writeln!(
            f,
            "SchwartzFn window=(-{}, {}) on {} x {} cells:",
            self.window.neg, self.window.pos, cells, cells
        )?;
        for i1 in 0..cells {
            for i2 in 0..cells {
                let v = &self.values[i1 * cells + i2];
                if !v.is_zero() {
                    writeln!(f, "  [{i1},{i2}] = {v}")?;
                }
            }
        }
        Ok(())
    }
}

/// Apply a generator through the Weil action. The `w` image is the
/// unnormalized character-sum transform (the intertwining constant is not
/// pinned); `n^-` composes `w^{-1} n(-b') w` and divides out the exact
/// rational scalar of the double transform, so no constant ambiguity
/// remains.
pub fn weil_act(g: &Sl2Gen, phi: &SchwartzFn) -> Result<SchwartzFn> {
    let d = phi.ctx().spec.psi_conductor_exp;
    match g {
        Sl2Gen::N(b) => act_n(phi, b, d),
        Sl2Gen::M(a) => act_m(phi, a),
        Sl2Gen::W => act_w(phi, d, false),
        Sl2Gen::NMinus(bp) => {
            let hat = act_w(phi, d, false)?;
            let twisted = act_n(&hat, &bp.neg(), d)?;
            let back = act_w(&twisted, d, true)?;
            // scalar of w^{-1} o w over the intermediate window
            let digits = twisted.window.digits();
            let scalar = Rat::from_int(phi.ctx().spec.q as i64).pow(2 * digits);
            let inv = scalar.recip();
            Ok(SchwartzFn {
                ctx: back.ctx.clone(),
                window: back.window,
                values: back.values.iter().map(|v| v.scale(&inv)).collect(),
            })
        }
    }
}

/// `n(b)`: pointwise multiply by `psi_d(b u1 u2)`. The product of two
/// window cosets is determined modulo `pi^{pos - neg}`, so the window is
/// refined until the character is constant on cosets.
fn act_n(phi: &SchwartzFn, b: &PadicElem, d: i64) -> Result<SchwartzFn> {
    let ctx = phi.ctx().clone();
    let v_b = match b.valuation()? {
        crate::localfield::padic::Val::Infinite => {
            return Ok(phi.clone());
        }
        crate::localfield::padic::Val::Finite(v) => v,
    };
    // need v(b) + (pos - neg) >= -d on the whole window
    let needed_pos = phi.window.neg - d - v_b;
    let window = Window {
        neg: phi.window.neg,
        pos: phi.window.pos.max(needed_pos),
    };
    let f = phi.enlarged(window)?;
    let cells = f.cells();
    let mut out = SchwartzFn::zero(&ctx, window)?;
    for i1 in 0..cells {
        let x1 = rep_of_index(&ctx, window, i1);
        for i2 in 0..cells {
            let v = &f.values[i1 * cells + i2];
            if v.is_zero() {
                continue;
            }
            let x2 = rep_of_index(&ctx, window, i2);
            let phase = additive_character(&b.mul(&x1).mul(&x2), d)?;
            out.values[i1 * cells + i2] = v.mul(&CycNum::root_of_unity(ctx.spec.p, &phase));
        }
    }
    Ok(out)
}

/// `m(a)`: `phi(a u) |a|` (`|a| = q^{-v(a)}` exactly).
fn act_m(phi: &SchwartzFn, a: &PadicElem) -> Result<SchwartzFn> {
    let ctx = phi.ctx().clone();
    let v_a = match a.valuation()? {
        crate::localfield::padic::Val::Infinite => {
            return Err(Error::InvalidInput("m(0) is not a group element".into()));
        }
        crate::localfield::padic::Val::Finite(v) => v,
    };
    // supp(phi(a .)) = a^{-1} supp phi; coset evaluation of a u needs the
    // output cosets to refine the input ones
    let window = Window {
        neg: phi.window.neg + 0.max(v_a),
        pos: phi.window.pos + 0.max(-v_a),
    };
    let mut out = SchwartzFn::zero(&ctx, window)?;
    let cells = out.cells();
    let norm = Rat::from_int(ctx.spec.q as i64).pow(-v_a);
    for i1 in 0..cells {
        let x1 = rep_of_index(&ctx, window, i1).mul(a);
        for i2 in 0..cells {
            let x2 = rep_of_index(&ctx, window, i2).mul(a);
            let v = phi.value_at(&x1, &x2);
            if !v.is_zero() {
                out.values[i1 * cells + i2] = v.scale(&norm);
            }
        }
    }
    Ok(out)
}

/// Unnormalized transform against `psi_d(x1 y2 + x2 y1)` (`inverse` flips
/// the kernel sign), done as two one-dimensional passes.
fn act_w(phi: &SchwartzFn, d: i64, inverse: bool) -> Result<SchwartzFn> {
    let ctx = phi.ctx().clone();
    let in_w = phi.window;
    let out_w = Window { neg: in_w.pos + d, pos: in_w.neg - d };
    if out_w.digits() < 0 || out_w.digits() > WINDOW_CAP {
        return Err(Error::WindowOverflow(format!(
            "transform window (-{}, {}) unsupported",
            out_w.neg, out_w.pos
        )));
    }
    let in_cells = in_w.cells(&ctx);
    let out_cells = out_w.cells(&ctx);
    let p = ctx.spec.p;
    let sign = if inverse { -1i64 } else { 1i64 };

    // cache of the rank-one kernel psi_d(sign * x y)
    let in_reps: Vec<PadicElem> = (0..in_cells).map(|i| rep_of_index(&ctx, in_w, i)).collect();
    let out_reps: Vec<PadicElem> = (0..out_cells).map(|i| rep_of_index(&ctx, out_w, i)).collect();
    let mut kernel = vec![CycNum::zero(p); in_cells * out_cells];
    for (ix, x) in in_reps.iter().enumerate() {
        for (iy, y) in out_reps.iter().enumerate() {
            let arg = x.mul(y).scale(&Rat::from_int(sign));
            let phase = additive_character(&arg, d)?;
            kernel[ix * out_cells + iy] = CycNum::root_of_unity(p, &phase);
        }
    }

    // pass 1: transform coordinate 2 against y1
    let mut mid = vec![CycNum::zero(p); in_cells * out_cells]; // (x1, y1)
    for i1 in 0..in_cells {
        for i2 in 0..in_cells {
            let v = &phi.values[i1 * in_cells + i2];
            if v.is_zero() {
                continue;
            }
            for iy1 in 0..out_cells {
                let k = &kernel[i2 * out_cells + iy1];
                let t = v.mul(k);
                mid[i1 * out_cells + iy1] = mid[i1 * out_cells + iy1].add(&t);
            }
        }
    }
    // pass 2: transform coordinate 1 against y2
    let mut out = SchwartzFn::zero(&ctx, out_w)?;
    for i1 in 0..in_cells {
        for iy1 in 0..out_cells {
            let v = &mid[i1 * out_cells + iy1];
            if v.is_zero() {
                continue;
            }
            for iy2 in 0..out_cells {
                let k = &kernel[i1 * out_cells + iy2];
                let t = v.mul(k);
                out.values[iy1 * out_cells + iy2] = out.values[iy1 * out_cells + iy2].add(&t);
            }
        }
    }
    Ok(out)
}

/// Generators of the distinguished maximal compact checked by
/// [`check_k_invariance`]: the diagonal torus over the units and the
/// integral upper and lower unipotents. The conjugation by the base
/// different degenerates here because the base field is unramified over
/// `Q_p`, so the group is the standard `SL2(O)`; the character level `d`
/// enters only through the acting additive character.
pub fn k_generators(ctx: &Ctx) -> Result<Vec<Sl2Gen>> {
    let mut gens = Vec::new();
    for a in unit_group_generators(ctx)? {
        gens.push(Sl2Gen::M(a));
    }
    for i in 0..ctx.f() {
        let wi = ctx.generator().pow(i as u32);
        gens.push(Sl2Gen::N(wi.clone()));
        gens.push(Sl2Gen::NMinus(wi));
    }
    Ok(gens)
}

/// Generators of `(O / pi^k)^x` for every `k`: a lift of a residue-field
/// generator plus the principal units `1 + pi w^i` (p odd; generation mod
/// the Frattini quotient suffices).
fn unit_group_generators(ctx: &Ctx) -> Result<Vec<PadicElem>> {
    let p = ctx.spec.p;
    let f = ctx.f();
    let q = ctx.spec.q;
    let mut gens = Vec::new();
    // residue-field multiplicative generator by deterministic search
    let mut found = None;
    'outer: for code in 1..q {
        // decode base-p digits into a residue representative
        let mut digits = Vec::with_capacity(f);
        let mut c = code;
        for _ in 0..f {
            digits.push(c % p);
            c /= p;
        }
        let elem = ctx
            .from_coeffs(digits.iter().map(|&d| Rat::from_int(d as i64)).collect())
            .unwrap();
        // multiplicative order test: x^{(q-1)/l} != 1 for prime l | q-1
        let mut m = q - 1;
        let mut prime_divs = Vec::new();
        let mut dd = 2;
        while dd * dd <= m {
            if m.is_multiple_of(dd) {
                prime_divs.push(dd);
                while m.is_multiple_of(dd) {
                    m /= dd;
                }
            }
            dd += 1;
        }
        if m > 1 {
            prime_divs.push(m);
        }
        for l in prime_divs {
            let pow = residue_pow(ctx, &elem, (q - 1) / l);
            if pow_is_one(ctx, &pow) {
                continue 'outer;
            }
        }
        found = Some(elem);
        break;
    }
    gens.push(found.ok_or_else(|| Error::InvalidInput("no residue generator found".into()))?);
    // principal units
    for i in 0..f {
        let one_plus = ctx.one().add(&ctx.generator().pow(i as u32).mul(&ctx.pi_pow(1)));
        gens.push(one_plus);
    }
    Ok(gens)
}

fn residue_pow(ctx: &Ctx, x: &PadicElem, mut e: u64) -> PadicElem {
    let mut acc = ctx.one();
    let mut sq = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&sq);
        }
        sq = sq.mul(&sq);
        e >>= 1;
    }
    acc
}

fn pow_is_one(ctx: &Ctx, x: &PadicElem) -> bool {
    // congruent to 1 modulo pi
    let diff = x.sub(&ctx.one());
    diff.rep_is_zero()
        || diff
            .coeffs()
            .iter()
            .all(|c| c.is_zero() || c.valuation(ctx.p_big()).unwrap() >= 1)
}

/// Is `phi` fixed (exactly) by the generating set of the distinguished
/// maximal compact attached to level `d`?
pub fn check_k_invariance(phi: &SchwartzFn, d: i64) -> Result<bool> {
    let ctx = phi.ctx().clone();
    if ctx.spec.psi_conductor_exp != d {
        return Err(Error::InvalidInput(format!(
            "context character level {} != requested level {d}",
            ctx.spec.psi_conductor_exp
        )));
    }
    for g in k_generators(&ctx)? {
        let moved = weil_act(&g, phi)?;
        if !moved.eq_as_functions(phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}
