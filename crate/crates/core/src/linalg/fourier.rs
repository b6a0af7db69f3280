//! The factorisation A·B_s = C_s and the Fourier vectors u_j that expose the integer
//! spectrum of C₁.
//!
//! Throughout, u_j is the column (ζ^(j·i)) for i = 1, …, n−1 and j ∈ {0, …, n−1}. The n vectors
//! sum to zero, and any n−1 of them form a basis of the (n−1)-dimensional space.

use std::sync::Arc;

use crate::circulant::CirculantSymbol;
use crate::cyclotomic::{CycNum, CyclotomicContext};
use crate::error::{precondition, Error, Result};
use crate::linalg::ExactMatrix;

/// An ordered choice of n−1 distinct exponents j, i.e. all Fourier vectors but one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisSpec {
    ctx: Arc<CyclotomicContext>,
    included: Vec<usize>,
}

impl BasisSpec {
    pub fn new(ctx: &Arc<CyclotomicContext>, included: Vec<usize>) -> Result<Self> {
        let n = ctx.n();
        if included.len() != n - 1 {
            return precondition(format!("basis needs {} vectors, got {}", n - 1, included.len()));
        }
        let mut seen = vec![false; n];
        for &j in &included {
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j, dim: n });
            }
            if std::mem::replace(&mut seen[j], true) {
                return precondition(format!("exponent {j} repeated in basis"));
            }
        }
        Ok(Self { ctx: ctx.clone(), included })
    }

    /// All exponents except `excluded`, ascending.
    pub fn excluding(ctx: &Arc<CyclotomicContext>, excluded: usize) -> Result<Self> {
        if excluded >= ctx.n() {
            return Err(Error::IndexOutOfRange { index: excluded, dim: ctx.n() });
        }
        Self::new(ctx, (0..ctx.n()).filter(|&j| j != excluded).collect())
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn included(&self) -> &[usize] {
        &self.included
    }

    pub fn excluded(&self) -> usize {
        (0..self.ctx.n()).find(|j| !self.included.contains(j)).expect("exactly one exponent is missing")
    }

    /// Position at which the excluded exponent would sit in ascending order.
    pub fn split_point(&self) -> usize {
        let ex = self.excluded();
        self.included.iter().filter(|&&j| j < ex).count()
    }
}

/// u_j as a vector of length n−1.
pub fn fourier_vector(ctx: &Arc<CyclotomicContext>, j: usize) -> Vec<CycNum> {
    (1..ctx.n() as i64).map(|i| CycNum::zeta_pow(ctx, j as i64 * i)).collect()
}

/// Columns u_j in the order given by `spec`.
pub fn fourier_basis(spec: &BasisSpec) -> ExactMatrix {
    let ctx = &spec.ctx;
    let n = ctx.n();
    ExactMatrix::from_fn(ctx, n - 1, n - 1, |i, t| CycNum::zeta_pow(ctx, (spec.included[t] * (i + 1)) as i64))
}

/// Closed-form inverse of [`fourier_basis`]. U is the DFT matrix (ζ^(ij)) with row 0 and column
/// e = excluded removed; deleting a row and column of a matrix with known inverse is a rank-one
/// correction, which here gives U⁻¹[t][i] = (ζ^(−i·j_t) − ζ^(−i·e))/n for vector index i = 1..n−1.
pub fn fourier_basis_inverse(spec: &BasisSpec) -> ExactMatrix {
    let ctx = &spec.ctx;
    let n = ctx.n();
    let e = spec.excluded() as i64;
    let inv_n = crate::ExactRational::new(1.into(), n.into());
    ExactMatrix::from_fn(ctx, n - 1, n - 1, |t, i| {
        let i = i as i64 + 1;
        let j = spec.included[t] as i64;
        (CycNum::zeta_pow(ctx, -i * j) - CycNum::zeta_pow(ctx, -i * e)).scale(&inv_n)
    })
}

/// U⁻¹·C·U with U = [`fourier_basis`]: column t holds the coordinates of C·u_{included[t]}.
pub fn change_of_basis(c: &ExactMatrix, spec: &BasisSpec) -> Result<ExactMatrix> {
    let n = spec.ctx.n();
    if c.rows() != n - 1 || c.cols() != n - 1 {
        return Err(Error::ShapeMismatch(format!("expected {0}x{0}, got {1}x{2}", n - 1, c.rows(), c.cols())));
    }
    fourier_basis_inverse(spec).mul(&c.mul(&fourier_basis(spec))?)
}

/// Outcome of checking the block shape [[X, Y], [0, Z]] with X and Z lower-triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularReport {
    pub diagonal: Vec<CycNum>,
    /// (row, col) positions, in basis order, of nonzero entries that the shape forbids.
    pub violating_positions: Vec<(usize, usize)>,
    /// Exponents of the basis vectors in the X block and in the Z block.
    pub block_partition: (Vec<usize>, Vec<usize>),
}

impl TriangularReport {
    pub fn is_block_triangular(&self) -> bool {
        self.violating_positions.is_empty()
    }

    /// Product of the diagonal; the determinant whenever the shape holds.
    pub fn diagonal_product(&self) -> Option<CycNum> {
        let mut it = self.diagonal.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, d| acc * d))
    }
}

pub fn assert_block_triangular(r: &ExactMatrix, spec: &BasisSpec) -> Result<TriangularReport> {
    let dim = spec.included.len();
    if r.rows() != dim || r.cols() != dim {
        return Err(Error::ShapeMismatch(format!("expected {dim}x{dim}, got {}x{}", r.rows(), r.cols())));
    }
    let split = spec.split_point();
    let block = |k: usize| usize::from(k >= split);
    let mut violating_positions = Vec::new();
    for row in 0..dim {
        for col in 0..dim {
            let forbidden = if block(row) == block(col) { col > row } else { block(row) > block(col) };
            if forbidden && !r.get(row, col).is_zero() {
                violating_positions.push((row, col));
            }
        }
    }
    Ok(TriangularReport {
        diagonal: (0..dim).map(|k| r.get(k, k).clone()).collect(),
        violating_positions,
        block_partition: (spec.included[..split].to_vec(), spec.included[split..].to_vec()),
    })
}

/// diag(1 − ζ^(is)) for i = 1, …, n−1.
pub fn build_b_s(ctx: &Arc<CyclotomicContext>, s: i64) -> Result<ExactMatrix> {
    let n = ctx.n() as i64;
    if s.rem_euclid(n) == 0 {
        return precondition(format!("s = {s} is divisible by n = {n}"));
    }
    let diag: Vec<CycNum> = (1..n).map(|i| CycNum::one(ctx) - CycNum::zeta_pow(ctx, i * s)).collect();
    Ok(ExactMatrix::diagonal(ctx, &diag))
}

/// C_s = A·B_s.
pub fn build_c_s(a: &ExactMatrix, s: i64) -> Result<ExactMatrix> {
    let ctx = a.context();
    let n = ctx.n();
    if a.rows() != n - 1 || a.cols() != n - 1 {
        return Err(Error::ShapeMismatch(format!("A must be {0}x{0}, got {1}x{2}", n - 1, a.rows(), a.cols())));
    }
    // B_s is diagonal: scale column j by 1 − ζ^((j+1)s).
    let n = n as i64;
    if s.rem_euclid(n) == 0 {
        return precondition(format!("s = {s} is divisible by n = {n}"));
    }
    let scale: Vec<CycNum> = (1..n).map(|i| CycNum::one(ctx) - CycNum::zeta_pow(ctx, i * s)).collect();
    Ok(ExactMatrix::from_fn(ctx, a.rows(), a.cols(), |i, j| {
        if a.get(i, j).is_zero() {
            CycNum::zero(ctx)
        } else {
            a.get(i, j) * &scale[j]
        }
    }))
}

/// The (n−1)×(n−1) matrix with zero diagonal and entries f(i − j) for a symbol f, i.e. the
/// circulant with its last row and column deleted.
pub fn truncated_circulant(sym: &CirculantSymbol) -> ExactMatrix {
    sym.build_matrix().minor(sym.n() - 1).expect("n >= 2")
}

/// Checks, for the sun1 matrix, that C₁u_s = (m − s)u_s − (m − s − 1)u_{s+1} for
/// s = 0, …, n−2 and C₁u_{n−1} = −m·u_{n−1} − m·u₀, where m = (n−1)/2.
pub fn verify_c1_recurrence(n: usize) -> Result<bool> {
    let sym = CirculantSymbol::sun1(n)?;
    let ctx = sym.context().clone();
    let c1 = build_c_s(&truncated_circulant(&sym), 1)?;
    let m = (n as i64 - 1) / 2;
    let u: Vec<Vec<CycNum>> = (0..n).map(|j| fourier_vector(&ctx, j)).collect();
    let combo = |a: i64, x: &[CycNum], b: i64, y: &[CycNum]| -> Vec<CycNum> {
        x.iter().zip(y).map(|(p, q)| p.scale_int(a) + q.scale_int(b)).collect()
    };
    for s in 0..n {
        let lhs = c1.mul_vec(&u[s])?;
        let rhs = if s + 1 < n {
            let k = m - s as i64;
            combo(k, &u[s], -(k - 1), &u[s + 1])
        } else {
            combo(-m, &u[n - 1], -m, &u[0])
        };
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> Arc<CyclotomicContext> {
        CyclotomicContext::new(n).unwrap()
    }

    fn int_matrix(c: &Arc<CyclotomicContext>, rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_ints(c, rows).unwrap()
    }

    #[test]
    fn closed_form_inverse() {
        for n in [2usize, 3, 4, 6, 7, 9] {
            let c = ctx(n);
            for e in 0..n {
                let spec = BasisSpec::excluding(&c, e).unwrap();
                let prod = fourier_basis_inverse(&spec).mul(&fourier_basis(&spec)).unwrap();
                assert_eq!(prod, ExactMatrix::identity(&c, n - 1), "n = {n}, excluded {e}");
            }
        }
        let c = ctx(5);
        let spec = BasisSpec::new(&c, vec![3, 0, 4, 1]).unwrap();
        let u = fourier_basis(&spec);
        assert_eq!(u.mul(&fourier_basis_inverse(&spec)).unwrap(), ExactMatrix::identity(&c, 4));
        let m = ExactMatrix::from_fn(&c, 4, 4, |i, j| CycNum::zeta_pow(&c, (i * j) as i64) + CycNum::from_int(&c, i as i64));
        assert_eq!(change_of_basis(&m, &spec).unwrap(), u.solve(&m.mul(&u).unwrap()).unwrap());
    }

    #[test]
    fn basis_spec_validation() {
        let c = ctx(5);
        assert!(BasisSpec::new(&c, vec![0, 1, 2]).is_err());
        assert!(BasisSpec::new(&c, vec![0, 1, 1, 2]).is_err());
        assert!(BasisSpec::new(&c, vec![0, 1, 2, 7]).is_err());
        let spec = BasisSpec::excluding(&c, 2).unwrap();
        assert_eq!(spec.included(), &[0, 1, 3, 4]);
        assert_eq!(spec.excluded(), 2);
        assert_eq!(spec.split_point(), 2);
    }

    #[test]
    fn basis_columns_n3() {
        let c = ctx(3);
        let u = fourier_basis(&BasisSpec::new(&c, vec![0, 2]).unwrap());
        assert_eq!(u.column(0), vec![CycNum::one(&c), CycNum::one(&c)]);
        assert_eq!(u.column(1), vec![CycNum::zeta_pow(&c, 2), CycNum::zeta_pow(&c, 1)]);
    }

    #[test]
    fn fourier_vectors_sum_to_zero() {
        for n in [2usize, 3, 6, 9, 10] {
            let c = ctx(n);
            let total = (0..n).map(|j| fourier_vector(&c, j)).fold(vec![CycNum::zero(&c); n - 1], |acc, v| {
                acc.iter().zip(&v).map(|(a, b)| a + b).collect()
            });
            assert!(total.iter().all(CycNum::is_zero), "n = {n}");
        }
    }

    #[test]
    fn every_basis_choice_is_nonsingular() {
        for n in 2..=9usize {
            let c = ctx(n);
            for ex in 0..n {
                let det = fourier_basis(&BasisSpec::excluding(&c, ex).unwrap()).determinant().unwrap();
                assert!(!det.is_zero(), "n = {n}, excluded {ex}");
            }
        }
    }

    #[test]
    fn b_s_examples() {
        let c3 = ctx(3);
        let b = build_b_s(&c3, 1).unwrap();
        assert_eq!(*b.get(0, 0), CycNum::one(&c3) - CycNum::zeta_pow(&c3, 1));
        assert_eq!(*b.get(1, 1), CycNum::one(&c3) - CycNum::zeta_pow(&c3, 2));
        assert!(build_b_s(&c3, 3).is_err());
        assert!(build_b_s(&ctx(9), 3).unwrap().determinant().unwrap().is_zero());
        let c7 = ctx(7);
        assert_eq!(build_b_s(&c7, 2).unwrap().determinant().unwrap(), CycNum::from_int(&c7, 7));
    }

    #[test]
    fn c_s_examples() {
        let c3 = ctx(3);
        let a = truncated_circulant(&CirculantSymbol::sun1(3).unwrap());
        let c1 = build_c_s(&a, 1).unwrap();
        assert_eq!(c1, int_matrix(&c3, &[vec![0, 1], vec![1, 0]]));
        assert_eq!(c1, a.mul(&build_b_s(&c3, 1).unwrap()).unwrap());

        let a2 = truncated_circulant(&CirculantSymbol::sun2(3).unwrap());
        let c1p = build_c_s(&a2, 1).unwrap();
        let one = CycNum::one(&c3);
        assert!(c1p.get(0, 0).is_zero());
        assert_eq!(*c1p.get(0, 1), &one + &CycNum::zeta_pow(&c3, 2));
        assert_eq!(*c1p.get(1, 0), &one + &CycNum::zeta_pow(&c3, 1));
        assert_eq!(c1p.determinant().unwrap(), CycNum::from_int(&c3, -1));

        for n in [3usize, 5, 7] {
            let c = ctx(n);
            let a = truncated_circulant(&CirculantSymbol::sun1(n).unwrap());
            let lhs = build_c_s(&a, 1).unwrap().determinant().unwrap();
            assert_eq!(lhs, a.determinant().unwrap().scale_int(n as i64));
            assert_eq!(c.n(), n);
        }
        assert!(build_c_s(&ExactMatrix::identity(&c3, 3), 1).is_err());
    }

    #[test]
    fn change_of_basis_n3() {
        let c3 = ctx(3);
        let c1 = build_c_s(&truncated_circulant(&CirculantSymbol::sun1(3).unwrap()), 1).unwrap();
        let r = change_of_basis(&c1, &BasisSpec::new(&c3, vec![0, 2]).unwrap()).unwrap();
        assert_eq!(r, int_matrix(&c3, &[vec![1, -1], vec![0, -1]]));

        let c1p = build_c_s(&truncated_circulant(&CirculantSymbol::sun2(3).unwrap()), 1).unwrap();
        let rp = change_of_basis(&c1p, &BasisSpec::new(&c3, vec![1, 2]).unwrap()).unwrap();
        assert_eq!(rp, int_matrix(&c3, &[vec![1, 0], vec![1, -1]]));

        let spec = BasisSpec::excluding(&ctx(7), 4).unwrap();
        let id = ExactMatrix::identity(spec.context(), 6);
        assert_eq!(change_of_basis(&id, &spec).unwrap(), id);
    }

    #[test]
    fn block_form_sun1() {
        for (n, expect) in [(3usize, vec![1, -1]), (5, vec![2, 1, -1, -2])] {
            let c = ctx(n);
            let c1 = build_c_s(&truncated_circulant(&CirculantSymbol::sun1(n).unwrap()), 1).unwrap();
            let spec = BasisSpec::excluding(&c, (n - 1) / 2).unwrap();
            let report = assert_block_triangular(&change_of_basis(&c1, &spec).unwrap(), &spec).unwrap();
            assert!(report.is_block_triangular(), "{:?}", report.violating_positions);
            let expect: Vec<CycNum> = expect.iter().map(|&v| CycNum::from_int(&c, v)).collect();
            assert_eq!(report.diagonal, expect);
        }
    }

    #[test]
    fn dense_matrix_is_flagged() {
        let c = ctx(5);
        let spec = BasisSpec::excluding(&c, 2).unwrap();
        let dense = ExactMatrix::from_fn(&c, 4, 4, |i, j| CycNum::from_int(&c, (i * 4 + j + 1) as i64));
        let report = assert_block_triangular(&dense, &spec).unwrap();
        assert!(!report.is_block_triangular());
        // upper triangles of both diagonal blocks plus the lower-left block
        assert_eq!(report.violating_positions.len(), 1 + 1 + 4);
    }

    #[test]
    fn recurrence_small() {
        for n in [3usize, 5, 7, 9] {
            assert!(verify_c1_recurrence(n).unwrap(), "n = {n}");
        }
        assert!(verify_c1_recurrence(4).is_err());
    }
}
