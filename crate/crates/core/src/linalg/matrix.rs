use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::{CycNum, CyclotomicContext};
use crate::error::{Error, Result};

/// Dimension from which `determinant` switches to the multimodular algorithm.
pub(crate) const MODULAR_THRESHOLD: usize = 6;

/// Dense row-major matrix over one cyclotomic field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    ctx: Arc<CyclotomicContext>,
    rows: usize,
    cols: usize,
    entries: Vec<CycNum>,
}

impl ExactMatrix {
    pub fn new(ctx: &Arc<CyclotomicContext>, rows: usize, cols: usize, entries: Vec<CycNum>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.n() != ctx.n()) {
            return Err(Error::ContextMismatch { left: ctx.n(), right: bad.n() });
        }
        Ok(Self { ctx: ctx.clone(), rows, cols, entries })
    }

    pub fn from_fn(
        ctx: &Arc<CyclotomicContext>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycNum,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.n(), ctx.n(), "entry from another field");
                entries.push(e);
            }
        }
        Self { ctx: ctx.clone(), rows, cols, entries }
    }

    pub fn zeros(ctx: &Arc<CyclotomicContext>, rows: usize, cols: usize) -> Self {
        Self::from_fn(ctx, rows, cols, |_, _| CycNum::zero(ctx))
    }

    pub fn identity(ctx: &Arc<CyclotomicContext>, dim: usize) -> Self {
        Self::from_fn(ctx, dim, dim, |i, j| if i == j { CycNum::one(ctx) } else { CycNum::zero(ctx) })
    }

    pub fn diagonal(ctx: &Arc<CyclotomicContext>, diag: &[CycNum]) -> Self {
        Self::from_fn(ctx, diag.len(), diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                CycNum::zero(ctx)
            }
        })
    }

    /// Integer matrix embedded in the field.
    pub fn from_ints(ctx: &Arc<CyclotomicContext>, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(ctx, rows.len(), cols, |i, j| CycNum::from_int(ctx, rows[i][j])))
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) outside {}x{}", self.rows, self.cols);
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: CycNum) {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) outside {}x{}", self.rows, self.cols);
        assert_eq!(value.n(), self.ctx.n(), "entry from another field");
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<CycNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx.n() != other.ctx.n() {
            return Err(Error::ContextMismatch { left: self.ctx.n(), right: other.ctx.n() });
        }
        Ok(())
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("{what} needs a square matrix, got {}x{}", self.rows, self.cols)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[CycNum]) -> Result<Vec<CycNum>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(CycNum::zero(&self.ctx), |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc + a * b
                    }
                })
            })
            .collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Result<Self> {
        self.check_ctx(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Self { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &CycNum) -> Self {
        Self { entries: self.entries.iter().map(|e| e * k).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Delete row `j` and column `j` (0-based).
    pub fn minor(&self, j: usize) -> Result<Self> {
        self.require_square("minor")?;
        if j >= self.rows {
            return Err(Error::IndexOutOfRange { index: j, dim: self.rows });
        }
        let keep: Vec<usize> = (0..self.rows).filter(|&k| k != j).collect();
        Ok(Self::from_fn(&self.ctx, keep.len(), keep.len(), |a, b| self.get(keep[a], keep[b]).clone()))
    }

    /// Gaussian elimination with the first nonzero entry of each column as pivot.
    /// The empty matrix has determinant one.
    /// Exact determinant. Small matrices use elimination over Q(ζₙ) directly; larger ones go
    /// through the multimodular path, whose cost does not depend on coefficient growth during
    /// elimination.
    pub fn determinant(&self) -> Result<CycNum> {
        self.require_square("determinant")?;
        if self.rows >= MODULAR_THRESHOLD {
            return Ok(super::modular::determinant(self));
        }
        self.determinant_gauss()
    }

    /// Determinant by Gaussian elimination over Q(ζₙ), without the multimodular shortcut.
    pub fn determinant_gauss(&self) -> Result<CycNum> {
        self.require_square("determinant")?;
        let n = self.rows;
        let mut a: Vec<Vec<CycNum>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = CycNum::one(&self.ctx);
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(CycNum::zero(&self.ctx));
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            let pivot_inv = a[k][k].inv()?;
            det = &det * &a[k][k];
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom.iter_mut() {
                if row[k].is_zero() {
                    continue;
                }
                let factor = &row[k] * &pivot_inv;
                for j in k + 1..n {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &(&factor * &pivot_row[j]);
                    }
                }
            }
        }
        Ok(if negate { -det } else { det })
    }

    /// Exact X with `self · X = rhs`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.require_square("solve")?;
        self.check_ctx(rhs)?;
        if rhs.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "right-hand side has {} rows, system has {}",
                rhs.rows, self.rows
            )));
        }
        let n = self.rows;
        let m = rhs.cols;
        let mut a: Vec<Vec<CycNum>> = (0..n)
            .map(|i| self.row(i).iter().chain(rhs.row(i)).cloned().collect())
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r][k].is_zero()).ok_or(Error::Singular)?;
            a.swap(p, k);
            let pivot_inv = a[k][k].inv()?;
            for j in k..n + m {
                if !a[k][j].is_zero() {
                    a[k][j] = &a[k][j] * &pivot_inv;
                }
            }
            let pivot_row = a[k].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == k || row[k].is_zero() {
                    continue;
                }
                let factor = row[k].clone();
                for j in k..n + m {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &(&factor * &pivot_row[j]);
                    }
                }
            }
        }
        Ok(Self::from_fn(&self.ctx, n, m, |i, j| a[i][n + j].clone()))
    }

    /// det(t·I − self).
    pub fn charpoly_eval(&self, t: &CycNum) -> Result<CycNum> {
        self.require_square("charpoly_eval")?;
        if t.n() != self.ctx.n() {
            return Err(Error::ContextMismatch { left: self.ctx.n(), right: t.n() });
        }
        let shifted = Self::from_fn(&self.ctx, self.rows, self.cols, |i, j| {
            if i == j {
                t - self.get(i, j)
            } else {
                -self.get(i, j)
            }
        });
        shifted.determinant()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over Q(zeta_{}) [", self.rows, self.cols, self.ctx.n())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(CycNum::to_literal).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
