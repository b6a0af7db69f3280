use crate::circulant::{CirculantSymbol, SpectrumResult};
use crate::cyclotomic::{CycNum, ExactRational};
use crate::error::{precondition, Error, Result};
use crate::linalg::ExactMatrix;

/// True iff every candidate is a root of det(t·I − M). With as many distinct candidates as the
/// dimension, that pins the spectrum down to exactly the candidate set.
pub fn verify_integer_spectrum(m: &ExactMatrix, expected: &[i64]) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    if expected.len() != m.rows() {
        return precondition(format!("{} candidates for dimension {}", expected.len(), m.rows()));
    }
    let mut sorted = expected.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return precondition("candidate eigenvalues must be distinct");
    }
    for &v in expected {
        if !m.charpoly_eval(&CycNum::from_int(m.context(), v))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both sides of the eigenvector-eigenvalue identity for the unit Fourier eigenvector vᵢ of a
/// circulant M and the minor M_j (row and column `j`, 0-based, removed):
/// (1/n)·Π_{k≠i}(λᵢ − λ_k)  and  det(λᵢ·I − M_j).
pub fn eei_sides(
    sym: &CirculantSymbol,
    spectrum: &SpectrumResult,
    matrix: &ExactMatrix,
    i: usize,
    j: usize,
) -> Result<(CycNum, CycNum)> {
    let n = sym.n();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, dim: n });
    }
    let ctx = sym.context();
    let lambda = &spectrum.lambdas[i];
    let lhs = spectrum
        .lambdas
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .fold(CycNum::from_rational(ctx, &ExactRational::new(1.into(), n.into())), |acc, (_, l)| {
            acc * (lambda - l)
        });
    let rhs = matrix.minor(j)?.charpoly_eval(lambda)?;
    Ok((lhs, rhs))
}

/// Exact check of the eigenvector-eigenvalue identity at eigen-index `i` and minor index `j`
/// (both 0-based). Requires the circulant to be normal.
pub fn verify_eei(sym: &CirculantSymbol, i: usize, j: usize) -> Result<bool> {
    if !sym.check_condition_iii() {
        return precondition("condition (iii) fails: the circulant is not normal");
    }
    let (lhs, rhs) = eei_sides(sym, &sym.dft_eigenvalues(), &sym.build_matrix(), i, j)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CyclotomicContext;
    use crate::linalg::{build_c_s, truncated_circulant};

    #[test]
    fn spectrum_checks() {
        let c = CyclotomicContext::new(5).unwrap();
        let swap = ExactMatrix::from_ints(&c, &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(verify_integer_spectrum(&swap, &[1, -1]).unwrap());
        assert!(!verify_integer_spectrum(&swap, &[1, 2]).unwrap());
        assert!(verify_integer_spectrum(&swap, &[1, 1]).is_err());
        assert!(verify_integer_spectrum(&swap, &[1]).is_err());
    }

    #[test]
    fn sun1_c1_spectrum_n5() {
        let a = truncated_circulant(&CirculantSymbol::sun1(5).unwrap());
        let c1 = build_c_s(&a, 1).unwrap();
        assert!(verify_integer_spectrum(&c1, &[1, -1, 2, -2]).unwrap());
        assert!(!verify_integer_spectrum(&c1, &[1, -1, 3, -3]).unwrap());
        assert!(!c1.charpoly_eval(&CycNum::from_int(c1.context(), 3)).unwrap().is_zero());
    }

    #[test]
    fn eei_all_pairs_n5() {
        for sym in [CirculantSymbol::sun1(5).unwrap(), CirculantSymbol::sun2(5).unwrap()] {
            for i in 0..5 {
                for j in 0..5 {
                    assert!(verify_eei(&sym, i, j).unwrap(), "i = {i}, j = {j}");
                }
            }
        }
    }

    #[test]
    fn eei_index_errors() {
        let sym = CirculantSymbol::sun1(3).unwrap();
        assert!(verify_eei(&sym, 3, 0).is_err());
        assert!(verify_eei(&sym, 0, 3).is_err());
    }
}
