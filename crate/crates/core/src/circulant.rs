//! Periodic symbols f: Z/n → Q(ζₙ), the circulant matrices they generate, and their spectra.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::cyclotomic::{CycNum, CyclotomicContext};
use crate::error::{precondition, Error, Result};
use crate::linalg::ExactMatrix;

/// A symbol f, stored as its n values f(0), …, f(n−1); lookups wrap modulo n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantSymbol {
    ctx: Arc<CyclotomicContext>,
    values: Vec<CycNum>,
}

/// DFT eigenvalues λᵢ = Σₖ f(k)·ζ^(−ki) and the indices where they vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumResult {
    pub lambdas: Vec<CycNum>,
    pub zero_indices: Vec<usize>,
}

fn require_odd(n: usize) -> Result<()> {
    if n <= 1 || n % 2 == 0 {
        return precondition("n must be odd and > 1");
    }
    Ok(())
}

impl CirculantSymbol {
    pub fn new(ctx: &Arc<CyclotomicContext>, values: Vec<CycNum>) -> Result<Self> {
        if values.len() != ctx.n() {
            return precondition(format!("symbol needs {} values, got {}", ctx.n(), values.len()));
        }
        if let Some(v) = values.iter().find(|v| v.n() != ctx.n()) {
            return Err(Error::ContextMismatch { left: ctx.n(), right: v.n() });
        }
        Ok(Self { ctx: ctx.clone(), values })
    }

    /// f(0) = 0 and f(k) = g(ζᵏ, k) / (1 − ζᵏ) otherwise.
    fn over_one_minus_zeta(n: usize, numer: impl Fn(&Arc<CyclotomicContext>, i64) -> CycNum) -> Result<Self> {
        let ctx = CyclotomicContext::new(n)?;
        let mut values = vec![CycNum::zero(&ctx)];
        for k in 1..n as i64 {
            let den = CycNum::one(&ctx) - CycNum::zeta_pow(&ctx, k);
            values.push(numer(&ctx, k) * den.inv()?);
        }
        Ok(Self { ctx, values })
    }

    /// f(k) = 1/(1 − ζᵏ), f(0) = 0.
    pub fn sun1(n: usize) -> Result<Self> {
        require_odd(n)?;
        Self::over_one_minus_zeta(n, |ctx, _| CycNum::one(ctx))
    }

    /// f(k) = (1 + ζᵏ)/(1 − ζᵏ), f(0) = 0.
    pub fn sun2(n: usize) -> Result<Self> {
        require_odd(n)?;
        Self::over_one_minus_zeta(n, |ctx, k| CycNum::one(ctx) + CycNum::zeta_pow(ctx, k))
    }

    /// f(k) = (a + b·ζ^(ck))/(1 − ζᵏ), f(0) = 0. Whether any DFT coefficient vanishes is
    /// left to [`CirculantSymbol::dft_eigenvalues`].
    pub fn abc(n: usize, a: i64, b: i64, c: i64) -> Result<Self> {
        if n <= 1 {
            return precondition("n must be > 1");
        }
        Self::over_one_minus_zeta(n, |ctx, k| CycNum::from_int(ctx, a) + CycNum::zeta_pow(ctx, c * k).scale_int(b))
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    pub fn at(&self, k: i64) -> &CycNum {
        &self.values[k.rem_euclid(self.n() as i64) as usize]
    }

    /// M with m_ij = f(i − j).
    pub fn build_matrix(&self) -> ExactMatrix {
        let n = self.n();
        ExactMatrix::from_fn(&self.ctx, n, n, |i, j| self.at(i as i64 - j as i64).clone())
    }

    pub fn dft_eigenvalues(&self) -> SpectrumResult {
        let n = self.n() as i64;
        let lambdas: Vec<CycNum> = (0..n)
            .map(|i| {
                self.values.iter().enumerate().fold(CycNum::zero(&self.ctx), |acc, (k, f)| {
                    if f.is_zero() {
                        acc
                    } else {
                        acc + f * &CycNum::zeta_pow(&self.ctx, -(k as i64) * i)
                    }
                })
            })
            .collect();
        let zero_indices = lambdas.iter().enumerate().filter(|(_, l)| l.is_zero()).map(|(i, _)| i).collect();
        SpectrumResult { lambdas, zero_indices }
    }

    /// Σₖ f(i−k)·conj(f(j−k)) = Σₖ conj(f(k−i))·f(k−j) for all i, j, i.e. M·M* = M*·M. Both
    /// products are circulant, so comparing column j = 0 suffices.
    pub fn check_condition_iii(&self) -> bool {
        let n = self.n() as i64;
        let conj: Vec<CycNum> = self.values.iter().map(CycNum::conj).collect();
        let conj_at = |k: i64| &conj[k.rem_euclid(n) as usize];
        let sum = |terms: &mut dyn Iterator<Item = (CycNum, CycNum)>| {
            terms.fold(CycNum::zero(&self.ctx), |acc, (a, b)| {
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc + a * b
                }
            })
        };
        (0..n).all(|i| {
            let lhs = sum(&mut (0..n).map(|k| (self.at(i - k).clone(), conj_at(-k).clone())));
            let rhs = sum(&mut (0..n).map(|k| (conj_at(k - i).clone(), self.at(k).clone())));
            lhs == rhs
        })
    }

    /// f(k) = conj(f(−k)) for every k.
    pub fn is_hermitian(&self) -> bool {
        (0..self.n() as i64).all(|k| *self.at(k) == self.at(-k).conj())
    }
}

/// Textual name of a symbol family: `sun1`, `sun2` or `abc:a,b,c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolSpec {
    Sun1,
    Sun2,
    Abc(i64, i64, i64),
}

impl SymbolSpec {
    /// sun1 and sun2 are only defined for odd n; abc symbols accept any n > 1.
    pub fn needs_odd_n(self) -> bool {
        !matches!(self, Self::Abc(..))
    }

    pub fn build(self, n: usize) -> Result<CirculantSymbol> {
        match self {
            Self::Sun1 => CirculantSymbol::sun1(n),
            Self::Sun2 => CirculantSymbol::sun2(n),
            Self::Abc(a, b, c) => CirculantSymbol::abc(n, a, b, c),
        }
    }
}

impl fmt::Display for SymbolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Sun1 => f.write_str("sun1"),
            Self::Sun2 => f.write_str("sun2"),
            Self::Abc(a, b, c) => write!(f, "abc:{a},{b},{c}"),
        }
    }
}

impl FromStr for SymbolSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sun1" => return Ok(Self::Sun1),
            "sun2" => return Ok(Self::Sun2),
            _ => {}
        }
        let bad = || Error::Parse(format!("unknown symbol {s:?}, expected sun1, sun2 or abc:a,b,c"));
        let body = s.strip_prefix("abc:").ok_or_else(bad)?;
        let parts: Vec<i64> = body.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
        match parts[..] {
            [a, b, c] => Ok(Self::Abc(a, b, c)),
            _ => Err(bad()),
        }
    }
}

/// Scan integer triples |a|, |b| ≤ `bound`, 0 ≤ c < n for symbols with a vanishing DFT
/// coefficient that satisfy the normality condition. The all-zero symbol (a = b = 0) is skipped.
pub fn scan_abc(n: usize, bound: i64) -> Result<Vec<(i64, i64, i64)>> {
    let mut found = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            if a == 0 && b == 0 {
                continue;
            }
            for c in 0..n as i64 {
                let sym = CirculantSymbol::abc(n, a, b, c)?;
                if !sym.dft_eigenvalues().zero_indices.is_empty() && sym.check_condition_iii() {
                    found.push((a, b, c));
                }
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::ExactRational;

    fn ints(ctx: &Arc<CyclotomicContext>, v: &[i64]) -> Vec<CycNum> {
        v.iter().map(|&x| CycNum::from_int(ctx, x)).collect()
    }

    #[test]
    fn parity_preconditions() {
        assert!(CirculantSymbol::sun1(4).is_err());
        assert!(CirculantSymbol::sun1(1).is_err());
        assert!(CirculantSymbol::sun2(10).is_err());
        assert!(CirculantSymbol::abc(1, 1, 0, 0).is_err());
        assert!(CirculantSymbol::abc(6, 1, 0, 0).is_ok());
    }

    #[test]
    fn sun1_values() {
        let s = CirculantSymbol::sun1(3).unwrap();
        assert!(s.values()[0].is_zero());
        let q = |p: i64, d: i64| ExactRational::new(p.into(), d.into());
        assert_eq!(s.values()[1].coeffs(), vec![q(2, 3), q(1, 3)]);
        let s5 = CirculantSymbol::sun1(5).unwrap();
        assert_eq!(*s5.at(4), s5.at(1).conj());
        assert!(s5.is_hermitian());
    }

    #[test]
    fn sun2_values() {
        let s = CirculantSymbol::sun2(3).unwrap();
        assert_eq!(s.at(1) * s.at(2), CycNum::from_ratio(s.context(), 1, 3));
        for n in [5usize, 7] {
            let s1 = CirculantSymbol::sun1(n).unwrap();
            let s2 = CirculantSymbol::sun2(n).unwrap();
            let ctx = s1.context().clone();
            for k in 1..n as i64 {
                assert_eq!(*s2.at(k), s1.at(k).scale_int(2) - CycNum::one(&ctx));
                // odd in k and Hermitian, hence purely imaginary values and a real spectrum
                assert!((s2.at(k) + s2.at(-k)).is_zero());
                assert_eq!(*s2.at(k), s2.at(-k).conj());
            }
        }
    }

    #[test]
    fn abc_specialisations() {
        for n in [3usize, 5, 7] {
            let sun1 = CirculantSymbol::sun1(n).unwrap();
            let plain = CirculantSymbol::abc(n, 1, 0, 0).unwrap();
            assert_eq!(plain.values(), sun1.values());
            let doubled = CirculantSymbol::abc(n, 1, 1, 0).unwrap();
            for k in 0..n as i64 {
                assert_eq!(*doubled.at(k), sun1.at(k).scale_int(2));
            }
        }
    }

    #[test]
    fn circulant_matrix_layout() {
        let s = CirculantSymbol::sun1(5).unwrap();
        let m = s.build_matrix();
        for i in 0..5 {
            assert!(m.get(i, i).is_zero());
            for j in 0..5 {
                assert_eq!(m.get((i + 1) % 5, (j + 1) % 5), m.get(i, j));
            }
        }
    }

    #[test]
    fn sun1_spectrum_n5() {
        let s = CirculantSymbol::sun1(5).unwrap();
        let spec = s.dft_eigenvalues();
        assert_eq!(spec.lambdas, ints(s.context(), &[2, 1, 0, -1, -2]));
        assert_eq!(spec.zero_indices, vec![2]);
    }

    #[test]
    fn sun2_spectrum_n5() {
        let s = CirculantSymbol::sun2(5).unwrap();
        let spec = s.dft_eigenvalues();
        assert_eq!(spec.lambdas, ints(s.context(), &[0, 3, 1, -1, -3]));
        assert_eq!(spec.zero_indices, vec![0]);
    }

    #[test]
    fn constant_symbol_spectrum() {
        let ctx = CyclotomicContext::new(6).unwrap();
        let s = CirculantSymbol::new(&ctx, ints(&ctx, &[1; 6])).unwrap();
        let spec = s.dft_eigenvalues();
        assert_eq!(spec.lambdas, ints(&ctx, &[6, 0, 0, 0, 0, 0]));
        assert_eq!(spec.zero_indices, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn normality() {
        for n in [3usize, 5, 7, 9] {
            assert!(CirculantSymbol::sun1(n).unwrap().check_condition_iii());
            assert!(CirculantSymbol::sun2(n).unwrap().check_condition_iii());
        }
        let ctx = CyclotomicContext::new(4).unwrap();
        let shift = CirculantSymbol::new(&ctx, ints(&ctx, &[0, 1, 0, 0])).unwrap();
        assert!(shift.check_condition_iii());
        assert!(shift.dft_eigenvalues().zero_indices.is_empty());
    }

    #[test]
    fn normality_matches_full_products() {
        for (n, a, b, c) in [(5usize, 1, 2, 3), (6, -1, 3, 1), (7, 2, -2, 0)] {
            let sym = CirculantSymbol::abc(n, a, b, c).unwrap();
            let m = sym.build_matrix();
            let mh = m.conj_transpose();
            let full = m.mul(&mh).unwrap() == mh.mul(&m).unwrap();
            assert_eq!(sym.check_condition_iii(), full);
        }
    }

    #[test]
    fn symbol_specs() {
        assert_eq!("abc:1,-1,2".parse::<SymbolSpec>().unwrap(), SymbolSpec::Abc(1, -1, 2));
        assert_eq!("sun2".parse::<SymbolSpec>().unwrap().to_string(), "sun2");
        assert!("abc:1,2".parse::<SymbolSpec>().is_err());
        assert!("sun3".parse::<SymbolSpec>().is_err());
        assert_eq!(SymbolSpec::Abc(1, 0, 0).build(4).unwrap(), CirculantSymbol::abc(4, 1, 0, 0).unwrap());
        assert!(SymbolSpec::Sun1.build(4).is_err());
    }

    #[test]
    fn wrong_length_rejected() {
        let ctx = CyclotomicContext::new(4).unwrap();
        assert!(CirculantSymbol::new(&ctx, ints(&ctx, &[0, 1])).is_err());
    }
}
