//! Lattices over the valuation ring, kept in a column upper-triangular
//! canonical form with p-power diagonal entries and reduced entries above
//! the diagonal. The form is unique per lattice, so equality of lattices is
//! equality of forms.

use super::padic::{Ctx, PadicElem, Val};
use crate::error::{Error, Result};
use crate::exact::Rat;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    /// Row-major n x n upper triangular canonical basis (columns generate).
    pub basis: Vec<Vec<PadicElem>>,
    /// Valuations of the diagonal entries.
    pub diag_exps: Vec<i64>,
    /// Valuation of the determinant relative to the standard lattice.
    pub index_exp: i64,
}

impl Lattice {
    pub fn rank(&self) -> usize {
        self.diag_exps.len()
    }

    /// Canonical basis as rational strings (one coordinate list per entry),
    /// the external wire format for lattices.
    pub fn to_rat_strings(&self) -> Vec<Vec<Vec<String>>> {
        self.basis
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.coeffs().iter().map(|c| c.to_string()).collect())
                    .collect()
            })
            .collect()
    }

    /// The standard lattice `O^n`.
    pub fn standard(ctx: &Ctx, n: usize) -> Lattice {
        let mut basis = vec![vec![ctx.zero(); n]; n];
        for (i, row) in basis.iter_mut().enumerate() {
            row[i] = ctx.one();
        }
        Lattice { basis, diag_exps: vec![0; n], index_exp: 0 }
    }

    /// Membership test by triangular back-substitution.
    pub fn contains(&self, v: &[PadicElem]) -> Result<bool> {
        let n = self.rank();
        assert_eq!(v.len(), n);
        let mut rem: Vec<PadicElem> = v.to_vec();
        for j in (0..n).rev() {
            // solve for the column-j coefficient from row j
            let y = rem[j].div(&self.basis[j][j])?;
            if !y.is_integral()? {
                return Ok(false);
            }
            for (i, rem_i) in rem.iter_mut().enumerate().take(j + 1) {
                let t = y.mul(&self.basis[i][j]);
                *rem_i = rem_i.sub(&t);
            }
        }
        Ok(true)
    }

    /// Is `row * basis` integral (the covector maps the lattice into `O`)?
    pub fn covector_integral(&self, row: &[PadicElem]) -> Result<bool> {
        let n = self.rank();
        assert_eq!(row.len(), n);
        for j in 0..n {
            let mut acc = row[0].ctx().zero();
            for (i, row_i) in row.iter().enumerate().take(j + 1) {
                acc = acc.add(&row_i.mul(&self.basis[i][j]));
            }
            if !acc.is_integral()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Canonical coset representative of `c` modulo `p^a` (as a rational with a
/// pure p-power denominator, digits in `[0, p^{a+m})`).
fn coset_rep(c: &Rat, a: i64, p: &BigInt) -> Rat {
    let v = match c.valuation(p) {
        None => return Rat::zero(),
        Some(v) => v,
    };
    if v >= a {
        return Rat::zero();
    }
    let m = (-v).max(0);
    let scale = Rat::from_int(p.clone()).pow(m);
    let t = c * &scale; // p-integral now
    let modulus = p.pow(u32::try_from(a + m).expect("modulus exponent"));
    let denom_unit = t.denom().clone();
    let inv = mod_inverse(&denom_unit, &modulus);
    let z = ((t.numer() * inv) % &modulus + &modulus) % &modulus;
    Rat::from_int(z) / scale
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    use num_traits::One;
    let (mut r0, mut r1) = (m.clone(), ((a % m) + m) % m);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
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

/// Canonical coset representative of a field element modulo `p^a O`,
/// coordinatewise in the power basis.
fn elem_coset_rep(x: &PadicElem, a: i64) -> PadicElem {
    let ctx = x.ctx().clone();
    let coeffs = x
        .coeffs()
        .iter()
        .map(|c| coset_rep(c, a, ctx.p_big()))
        .collect();
    ctx.from_coeffs(coeffs).unwrap()
}

/// Column Hermite reduction over the valuation ring. The input columns must
/// generate a full-rank lattice in `F0^n`; extra columns are allowed.
pub fn lattice_canonicalize(ctx: &Ctx, columns: &[Vec<PadicElem>]) -> Result<Lattice> {
    let n = columns.first().map_or(0, Vec::len);
    if n == 0 || columns.len() < n {
        return Err(Error::SingularInput("need at least n spanning columns".into()));
    }
    if columns.iter().any(|c| c.len() != n) {
        return Err(Error::InvalidInput("ragged columns".into()));
    }
    let mut active: Vec<Vec<PadicElem>> = columns.to_vec();
    let mut fixed: Vec<Option<Vec<PadicElem>>> = vec![None; n];

    // Triangularize bottom row up: pick the minimal-valuation pivot at row
    // r, normalize it to an exact p-power, zero out row r in the rest.
    for r in (0..n).rev() {
        let mut best: Option<(i64, usize)> = None;
        for (j, col) in active.iter().enumerate() {
            if col[r].rep_is_zero() {
                continue;
            }
            if let Val::Finite(v) = col[r].valuation()? {
                if best.is_none_or(|(bv, _)| v < bv) {
                    best = Some((v, j));
                }
            }
        }
        let (a_r, j_star) = best.ok_or_else(|| {
            Error::SingularInput(format!("columns do not span (row {r} vanishes)"))
        })?;
        let mut pivot_col = active.swap_remove(j_star);
        let unit = pivot_col[r].div(&ctx.pi_pow(a_r))?;
        let unit_inv = unit.inv()?;
        for e in pivot_col.iter_mut() {
            *e = e.mul(&unit_inv);
        }
        pivot_col[r] = ctx.pi_pow(a_r);
        for col in active.iter_mut() {
            if col[r].rep_is_zero() {
                col[r] = ctx.zero();
                continue;
            }
            let factor = col[r].div(&ctx.pi_pow(a_r))?;
            debug_assert!(factor.is_integral()?);
            for i in 0..=r {
                let t = factor.mul(&pivot_col[i]);
                col[i] = col[i].sub(&t);
            }
            col[r] = ctx.zero();
        }
        fixed[r] = Some(pivot_col);
    }
    let mut cols: Vec<Vec<PadicElem>> = fixed.into_iter().map(Option::unwrap).collect();

    // Reduce above-diagonal entries to canonical coset representatives.
    let diag_exps: Vec<i64> = (0..n)
        .map(|i| match cols[i][i].valuation() {
            Ok(Val::Finite(v)) => v,
            _ => unreachable!("pivot is an exact p-power"),
        })
        .collect();
    for j in 0..n {
        for i in (0..j).rev() {
            let rep = elem_coset_rep(&cols[j][i], diag_exps[i]);
            let delta = cols[j][i].sub(&rep);
            if delta.rep_is_zero() {
                cols[j][i] = rep;
                continue;
            }
            let factor = delta.div(&ctx.pi_pow(diag_exps[i]))?;
            debug_assert!(factor.is_integral()?);
            let col_i = cols[i].clone();
            for k in 0..=i {
                let t = factor.mul(&col_i[k]);
                cols[j][k] = cols[j][k].sub(&t);
            }
            cols[j][i] = rep;
        }
    }

    // assemble row-major basis from the n fixed columns
    let mut basis = vec![vec![ctx.zero(); n]; n];
    for (j, col) in cols.iter().enumerate().take(n) {
        for (i, e) in col.iter().enumerate() {
            basis[i][j] = e.clone();
        }
    }
    let index_exp = diag_exps.iter().sum();
    Ok(Lattice { basis, diag_exps, index_exp })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::padic::PadicCtx;

    fn c3() -> Ctx {
        PadicCtx::new(3, 1, 0).unwrap()
    }

    fn col(ctx: &Ctx, v: &[i64]) -> Vec<PadicElem> {
        v.iter().map(|&x| ctx.integer(x)).collect()
    }

    #[test]
    fn identity_columns() {
        let ctx = c3();
        let l = lattice_canonicalize(&ctx, &[col(&ctx, &[1, 0]), col(&ctx, &[0, 1])]).unwrap();
        assert_eq!(l.diag_exps, vec![0, 0]);
        assert_eq!(l.index_exp, 0);
    }

    #[test]
    fn det_p_example() {
        // columns (p,0),(1,1): canonical diagonal (p,1) after reduction,
        // index 1
        let ctx = c3();
        let l = lattice_canonicalize(&ctx, &[col(&ctx, &[3, 0]), col(&ctx, &[1, 1])]).unwrap();
        assert_eq!(l.index_exp, 1);
        let mut exps = l.diag_exps.clone();
        exps.sort();
        assert_eq!(exps, vec![0, 1]);
    }

    #[test]
    fn scaled_standard() {
        let ctx = c3();
        let l = lattice_canonicalize(&ctx, &[col(&ctx, &[3, 0]), col(&ctx, &[0, 3])]).unwrap();
        assert_eq!(l.diag_exps, vec![1, 1]);
        assert_eq!(l.index_exp, 2);
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        // mix the columns by a unimodular transform; same canonical form
        let ctx = c3();
        let a = vec![col(&ctx, &[9, 0]), col(&ctx, &[2, 1])];
        let b = vec![col(&ctx, &[9 + 2 * 2, 2]), col(&ctx, &[2, 1])]; // c1 + 2c2, c2
        let la = lattice_canonicalize(&ctx, &a).unwrap();
        let lb = lattice_canonicalize(&ctx, &b).unwrap();
        assert_eq!(la, lb);
    }

    #[test]
    fn idempotence() {
        let ctx = c3();
        let cols = vec![col(&ctx, &[9, 3]), col(&ctx, &[4, 6])];
        let l = lattice_canonicalize(&ctx, &cols).unwrap();
        let cols2: Vec<Vec<PadicElem>> = (0..l.rank())
            .map(|j| (0..l.rank()).map(|i| l.basis[i][j].clone()).collect())
            .collect();
        let l2 = lattice_canonicalize(&ctx, &cols2).unwrap();
        assert_eq!(l, l2);
    }

    #[test]
    fn surplus_columns_are_consumed() {
        // more generators than the rank: same lattice, same form
        let ctx = c3();
        let two = vec![col(&ctx, &[3, 0]), col(&ctx, &[1, 1])];
        let three = vec![
            col(&ctx, &[3, 0]),
            col(&ctx, &[1, 1]),
            col(&ctx, &[4, 1]), // sum of the first two
        ];
        let a = lattice_canonicalize(&ctx, &two).unwrap();
        let b = lattice_canonicalize(&ctx, &three).unwrap();
        assert_eq!(a, b);
        // a surplus generator that genuinely enlarges the lattice
        let four = vec![
            col(&ctx, &[3, 0]),
            col(&ctx, &[1, 1]),
            col(&ctx, &[1, 0]),
        ];
        let l = lattice_canonicalize(&ctx, &four).unwrap();
        assert_eq!(l.index_exp, 0);
    }

    #[test]
    fn singular_input_rejected() {
        let ctx = c3();
        let r = lattice_canonicalize(&ctx, &[col(&ctx, &[1, 2]), col(&ctx, &[2, 4])]);
        assert!(matches!(r, Err(Error::SingularInput(_))));
    }

    #[test]
    fn membership() {
        let ctx = c3();
        let l = lattice_canonicalize(&ctx, &[col(&ctx, &[3, 0]), col(&ctx, &[1, 1])]).unwrap();
        assert!(l.contains(&col(&ctx, &[1, 1])).unwrap());
        assert!(l.contains(&col(&ctx, &[3, 0])).unwrap());
        assert!(!l.contains(&col(&ctx, &[1, 0])).unwrap());
        // covector u2 = (1, 0): maps the lattice into O
        assert!(l.covector_integral(&col(&ctx, &[1, 0])).unwrap());
        // u2 = (1/3, 0) does not: (1/3)*3 = 1 is fine but (1/3)*1 is not
        let u2 = vec![ctx.rational(Rat::new(1.into(), 3.into())), ctx.zero()];
        assert!(!l.covector_integral(&u2).unwrap());
    }
}
