//! Small dense matrices over the local field elements.
//!
//! Sizes stay tiny (n <= 4 in practice), so Gauss-Jordan with exact
//! pivoting and Faddeev-LeVerrier for characteristic polynomials are
//! entirely adequate.

use super::quad::QuadElem;
use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Matrix {
    pub n_rows: usize,
    pub n_cols: usize,
    data: Vec<QuadElem>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<QuadElem>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == n_cols));
        Matrix { n_rows, n_cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn identity(ctx: &super::padic::Ctx, n: usize) -> Self {
        let mut m = Matrix::zero(ctx, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = QuadElem::one(ctx);
        }
        m
    }

    pub fn zero(ctx: &super::padic::Ctx, n_rows: usize, n_cols: usize) -> Self {
        Matrix {
            n_rows,
            n_cols,
            data: vec![QuadElem::zero(ctx); n_rows * n_cols],
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &QuadElem {
        &self.data[i * self.n_cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut QuadElem {
        &mut self.data[i * self.n_cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &QuadElem> {
        self.data.iter()
    }

    pub fn conj(&self) -> Self {
        Matrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().map(QuadElem::conj).collect(),
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n_cols, rhs.n_rows);
        let ctx = self.data[0].ctx().clone();
        let mut out = Matrix::zero(&ctx, self.n_rows, rhs.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = self.at(i, k);
                if a.rep_is_zero() {
                    continue;
                }
                for j in 0..rhs.n_cols {
                    let t = a.mul(rhs.at(k, j));
                    *out.at_mut(i, j) = out.at(i, j).add(&t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[QuadElem]) -> Vec<QuadElem> {
        assert_eq!(self.n_cols, v.len());
        let ctx = self.data[0].ctx().clone();
        (0..self.n_rows)
            .map(|i| {
                let mut acc = QuadElem::zero(&ctx);
                for (j, vj) in v.iter().enumerate() {
                    acc = acc.add(&self.at(i, j).mul(vj));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.n_rows, self.n_cols), (rhs.n_rows, rhs.n_cols));
        Matrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.n_rows, self.n_cols), (rhs.n_rows, rhs.n_cols));
        Matrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &QuadElem) -> Matrix {
        Matrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn trace(&self) -> QuadElem {
        assert_eq!(self.n_rows, self.n_cols);
        let mut acc = QuadElem::zero(self.data[0].ctx());
        for i in 0..self.n_rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    /// Exact determinant by Laplace expansion; fine for the tiny sizes here.
    pub fn det(&self) -> QuadElem {
        assert_eq!(self.n_rows, self.n_cols);
        let n = self.n_rows;
        let ctx = self.data[0].ctx();
        match n {
            0 => QuadElem::one(ctx),
            1 => self.at(0, 0).clone(),
            2 => self
                .at(0, 0)
                .mul(self.at(1, 1))
                .sub(&self.at(0, 1).mul(self.at(1, 0))),
            _ => {
                let mut acc = QuadElem::zero(ctx);
                for j in 0..n {
                    let a = self.at(0, j);
                    if a.rep_is_zero() {
                        continue;
                    }
                    let minor = self.minor(0, j);
                    let term = a.mul(&minor.det());
                    acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> Matrix {
        let rows: Vec<Vec<QuadElem>> = (0..self.n_rows)
            .filter(|&i| i != row)
            .map(|i| {
                (0..self.n_cols)
                    .filter(|&j| j != col)
                    .map(|j| self.at(i, j).clone())
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows)
    }

    /// Exact inverse via Gauss-Jordan; pivots taken on representative-nonzero
    /// entries.
    pub fn inverse(&self) -> Result<Matrix> {
        assert_eq!(self.n_rows, self.n_cols);
        let n = self.n_rows;
        let ctx = self.data[0].ctx().clone();
        let mut a = self.clone();
        let mut inv = Matrix::identity(&ctx, n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.at(r, col).rep_is_zero())
                .ok_or_else(|| Error::SingularInput("matrix not invertible".into()))?;
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a.at(pivot_row, j).clone();
                    *a.at_mut(pivot_row, j) = a.at(col, j).clone();
                    *a.at_mut(col, j) = tmp;
                    let tmp = inv.at(pivot_row, j).clone();
                    *inv.at_mut(pivot_row, j) = inv.at(col, j).clone();
                    *inv.at_mut(col, j) = tmp;
                }
            }
            let piv_inv = a.at(col, col).inv()?;
            for j in 0..n {
                *a.at_mut(col, j) = a.at(col, j).mul(&piv_inv);
                *inv.at_mut(col, j) = inv.at(col, j).mul(&piv_inv);
            }
            for r in 0..n {
                if r == col || a.at(r, col).rep_is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for j in 0..n {
                    let t = factor.mul(a.at(col, j));
                    *a.at_mut(r, j) = a.at(r, j).sub(&t);
                    let t = factor.mul(inv.at(col, j));
                    *inv.at_mut(r, j) = inv.at(r, j).sub(&t);
                }
            }
        }
        Ok(inv)
    }

    /// Monic characteristic polynomial coefficients `c_0..c_{n-1}` (so
    /// `charpoly(t) = t^n + c_{n-1} t^{n-1} + ... + c_0`), by
    /// Faddeev-LeVerrier. Divisions are by the integers `1..=n`, exact in
    /// the field.
    pub fn char_poly(&self) -> Vec<QuadElem> {
        assert_eq!(self.n_rows, self.n_cols);
        let n = self.n_rows;
        let ctx = self.data[0].ctx().clone();
        let mut coeffs = vec![QuadElem::zero(&ctx); n];
        // M_1 = I; M_k = A M_{k-1} + c_{n-k+1} I; c_{n-k} = -tr(A M_k)/k.
        let mut m = Matrix::identity(&ctx, n);
        let mut c = QuadElem::zero(&ctx);
        for k in 1..=n {
            if k > 1 {
                for i in 0..n {
                    *m.at_mut(i, i) = m.at(i, i).add(&c);
                }
            }
            let am = self.mul(&m);
            let tr = am.trace();
            c = tr.scale_rat(&crate::exact::Rat::new((-1).into(), (k as i64).into()));
            coeffs[n - k] = c.clone();
            m = am;
        }
        coeffs
    }

    /// True when every entry is certifiably integral.
    pub fn is_integral(&self) -> Result<bool> {
        for e in &self.data {
            if !e.is_integral()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.n_rows, self.n_cols)?;
        for i in 0..self.n_rows {
            write!(f, "  ")?;
            for j in 0..self.n_cols {
                write!(f, "{:?}  ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
