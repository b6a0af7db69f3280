//! Signed derangements and the brute-force signed derangement sum.
//!
//! For a matrix with zero diagonal every Leibniz term with a fixed point vanishes, so
//! Σ_{τ derangement} sign(τ)·Π_j m_{j,τ(j)} is its determinant. [`brute_det`] computes that sum
//! term by term and shares no code with the elimination in [`crate::linalg`].

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::cyclotomic::CycNum;
use crate::error::{precondition, Error, Result};
use crate::linalg::ExactMatrix;

/// A permutation of {1, …, m} with its sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    mapping: Vec<usize>,
    sign: i8,
}

impl SignedPermutation {
    /// 1-based images: `mapping()[j - 1] = τ(j)`.
    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_derangement(&self) -> bool {
        self.mapping.iter().enumerate().all(|(j, &t)| t != j + 1)
    }
}

/// Subfactorial via D(m) = (m − 1)(D(m − 1) + D(m − 2)), D(0) = 1, D(1) = 0.
pub fn count_derangements(m: usize) -> BigUint {
    let (mut prev, mut cur) = (BigUint::one(), BigUint::zero());
    if m == 0 {
        return prev;
    }
    for k in 2..=m {
        let next = (&prev + &cur) * BigUint::from(k - 1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Depth-first enumeration in lexicographic order, pruning fixed points at every level and
/// carrying the inversion parity along the prefix.
pub struct Derangements {
    m: usize,
    first: Option<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    next: Vec<usize>,
    parity: Vec<bool>,
    depth: usize,
    done: bool,
}

/// Every derangement of {1, …, m}, each exactly once.
pub fn derangements(m: usize) -> Derangements {
    Derangements {
        m,
        first: None,
        image: vec![0; m],
        used: vec![false; m],
        next: vec![0; m + 1],
        parity: vec![false; m + 1],
        depth: 0,
        done: false,
    }
}

/// The derangements with τ(1) = `first`; for `first` in 2..=m these partition [`derangements`].
pub fn derangements_with_first(m: usize, first: usize) -> Derangements {
    let mut it = derangements(m);
    if m == 0 || first < 2 || first > m {
        it.done = true;
    } else {
        it.first = Some(first - 1);
    }
    it
}

impl Derangements {
    fn emit(&self) -> SignedPermutation {
        SignedPermutation {
            mapping: self.image.iter().map(|v| v + 1).collect(),
            sign: if self.parity[self.m] { -1 } else { 1 },
        }
    }
}

impl Iterator for Derangements {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        if self.done {
            return None;
        }
        loop {
            if self.depth == self.m {
                let out = self.emit();
                if self.m == 0 {
                    self.done = true;
                    return Some(out);
                }
                self.depth -= 1;
                self.used[self.image[self.depth]] = false;
                return Some(out);
            }
            let d = self.depth;
            let candidate = (self.next[d]..self.m).find(|&v| {
                v != d && !self.used[v] && (d != 0 || self.first.is_none_or(|f| f == v))
            });
            match candidate {
                Some(v) => {
                    self.next[d] = v + 1;
                    self.image[d] = v;
                    self.used[v] = true;
                    let inversions = self.image[..d].iter().filter(|&&w| w > v).count();
                    self.parity[d + 1] = self.parity[d] ^ (inversions % 2 == 1);
                    self.depth += 1;
                    self.next[self.depth] = 0;
                }
                None => {
                    if d == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth -= 1;
                    self.used[self.image[self.depth]] = false;
                }
            }
        }
    }
}

/// Row-scaled integral form of a matrix: entry (i, j) equals `num[i][j] / scale[i]` with
/// `num[i][j]` an integer polynomial reduced modulo Φₙ.
struct IntegralRows {
    dim: usize,
    degree: usize,
    phi: Vec<BigInt>,
    num: Vec<Vec<BigInt>>,
    scale: BigInt,
}

impl IntegralRows {
    fn new(m: &ExactMatrix) -> Self {
        let dim = m.rows();
        let ctx = m.context();
        let mut num = Vec::with_capacity(dim * dim);
        let mut scale = BigInt::one();
        for i in 0..dim {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denominator()));
            for e in row {
                let k = &lcm / e.denominator();
                num.push(e.numerator().iter().map(|c| c * &k).collect());
            }
            scale *= lcm;
        }
        Self { dim, degree: ctx.degree(), phi: ctx.phi().to_vec(), num, scale }
    }

    fn entry(&self, i: usize, j: usize) -> &[BigInt] {
        &self.num[i * self.dim + j]
    }

    /// Signed sum over the given derangements in i128, or `None` on any overflow.
    fn sum_i128(&self, perms: Derangements) -> Option<Vec<BigInt>> {
        let small: Option<Vec<Vec<i128>>> =
            self.num.iter().map(|p| p.iter().map(ToPrimitive::to_i128).collect()).collect();
        let small = small?;
        let phi: Vec<i128> = self.phi.iter().map(ToPrimitive::to_i128).collect::<Option<_>>()?;
        let d = self.degree;
        let mut acc = vec![0i128; d];
        let mut prod = vec![0i128; d];
        let mut wide = vec![0i128; 2 * d];
        for perm in perms {
            prod.iter_mut().for_each(|c| *c = 0);
            prod[0] = 1;
            for (row, &col) in perm.mapping().iter().enumerate() {
                let e = &small[row * self.dim + col - 1];
                wide.iter_mut().for_each(|c| *c = 0);
                for (a, x) in prod.iter().enumerate() {
                    if *x == 0 {
                        continue;
                    }
                    for (b, y) in e.iter().enumerate() {
                        if *y != 0 {
                            wide[a + b] = wide[a + b].checked_add(x.checked_mul(*y)?)?;
                        }
                    }
                }
                for top in (d..2 * d).rev() {
                    let c = wide[top];
                    if c == 0 {
                        continue;
                    }
                    for (t, q) in phi[..d].iter().enumerate() {
                        if *q != 0 {
                            wide[top - d + t] = wide[top - d + t].checked_sub(c.checked_mul(*q)?)?;
                        }
                    }
                }
                prod.copy_from_slice(&wide[..d]);
            }
            for (a, p) in acc.iter_mut().zip(&prod) {
                *a = if perm.sign() > 0 { a.checked_add(*p)? } else { a.checked_sub(*p)? };
            }
        }
        Some(acc.into_iter().map(BigInt::from).collect())
    }

    fn sum_big(&self, perms: Derangements) -> Vec<BigInt> {
        let d = self.degree;
        let mut acc = vec![BigInt::zero(); d];
        for perm in perms {
            let mut prod = vec![BigInt::zero(); d];
            prod[0] = BigInt::one();
            for (row, &col) in perm.mapping().iter().enumerate() {
                let mut wide = crate::cyclotomic::poly::mul_int(&prod, self.entry(row, col - 1));
                for top in (d..wide.len()).rev() {
                    let c = std::mem::take(&mut wide[top]);
                    if c.is_zero() {
                        continue;
                    }
                    for (t, q) in self.phi[..d].iter().enumerate() {
                        wide[top - d + t] -= &c * q;
                    }
                }
                wide.resize(d, BigInt::zero());
                prod = wide;
            }
            for (a, p) in acc.iter_mut().zip(prod) {
                if perm.sign() > 0 {
                    *a += p;
                } else {
                    *a -= p;
                }
            }
        }
        acc
    }

    fn partial(&self, make: impl Fn() -> Derangements) -> Vec<BigInt> {
        self.sum_i128(make()).unwrap_or_else(|| self.sum_big(make()))
    }
}

fn check_zero_diagonal(m: &ExactMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} is not square", m.rows(), m.cols())));
    }
    if let Some(i) = (0..m.rows()).find(|&i| !m.get(i, i).is_zero()) {
        return precondition(format!("brute_det needs a zero diagonal; entry ({0}, {0}) is nonzero", i + 1));
    }
    Ok(())
}

fn finish(m: &ExactMatrix, rows: &IntegralRows, num: Vec<BigInt>) -> CycNum {
    CycNum::from_int_coeffs(m.context(), num, rows.scale.clone())
}

/// Σ_{τ ∈ D(m)} sign(τ)·Π_j m_{j,τ(j)} for a square matrix with zero diagonal.
pub fn brute_det(m: &ExactMatrix) -> Result<CycNum> {
    check_zero_diagonal(m)?;
    let rows = IntegralRows::new(m);
    let num = rows.partial(|| derangements(m.rows()));
    Ok(finish(m, &rows, num))
}

/// [`brute_det`] with the enumeration split by the image of position 1 and summed on the
/// current rayon pool. Exact addition makes the result independent of the split. Without the
/// `parallel` feature the parts run one after another.
pub fn brute_det_parallel(m: &ExactMatrix) -> Result<CycNum> {
    check_zero_diagonal(m)?;
    let dim = m.rows();
    if dim < 2 {
        return brute_det(m);
    }
    let rows = IntegralRows::new(m);
    #[cfg(feature = "parallel")]
    let firsts = (2..=dim).into_par_iter();
    #[cfg(not(feature = "parallel"))]
    let firsts = 2..=dim;
    let parts: Vec<Vec<BigInt>> = firsts.map(|first| rows.partial(|| derangements_with_first(dim, first))).collect();
    let mut total = vec![BigInt::zero(); rows.degree];
    for part in parts {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    Ok(finish(m, &rows, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::CirculantSymbol;
    use crate::cyclotomic::CyclotomicContext;
    use crate::linalg::truncated_circulant;

    fn cycle_sign(p: &SignedPermutation) -> i8 {
        let m = p.mapping().len();
        let mut seen = vec![false; m];
        let mut cycles = 0;
        for s in 0..m {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut k = s;
            while !seen[k] {
                seen[k] = true;
                k = p.mapping()[k] - 1;
            }
        }
        if (m - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn counts() {
        let expect = [1u64, 0, 1, 2, 9, 44, 265, 1854, 14833, 133496, 1334961];
        for (m, &e) in expect.iter().enumerate() {
            assert_eq!(count_derangements(m), BigUint::from(e));
        }
    }

    #[test]
    fn small_enumerations() {
        let two: Vec<_> = derangements(2).collect();
        assert_eq!(two, vec![SignedPermutation { mapping: vec![2, 1], sign: -1 }]);
        let three: Vec<_> = derangements(3).collect();
        assert_eq!(three.len(), 2);
        assert!(three.iter().all(|p| p.sign() == 1));
        assert_eq!(three[0].mapping(), &[2, 3, 1]);
        assert_eq!(three[1].mapping(), &[3, 1, 2]);
        let four: Vec<_> = derangements(4).collect();
        assert_eq!(four.len(), 9);
        // six odd 4-cycles and three even double transpositions; also det(J − I) for 4×4
        assert_eq!(four.iter().map(|p| i64::from(p.sign())).sum::<i64>(), -3);
        let ctx = CyclotomicContext::new(2).unwrap();
        let j_minus_i = ExactMatrix::from_fn(&ctx, 4, 4, |i, j| CycNum::from_int(&ctx, (i != j) as i64));
        assert_eq!(j_minus_i.determinant().unwrap(), CycNum::from_int(&ctx, -3));
        assert_eq!(derangements(0).count(), 1);
        assert_eq!(derangements(1).count(), 0);
    }

    #[test]
    fn stream_matches_count_and_signs() {
        for m in 0..=8 {
            let mut n = 0u64;
            for p in derangements(m) {
                assert!(p.is_derangement());
                assert_eq!(p.sign(), cycle_sign(&p), "{:?}", p.mapping());
                n += 1;
            }
            assert_eq!(BigUint::from(n), count_derangements(m));
        }
    }

    #[test]
    fn partition_by_first_image() {
        for m in 2..=7 {
            let whole: Vec<_> = derangements(m).collect();
            let parts: Vec<_> = (2..=m).flat_map(|f| derangements_with_first(m, f)).collect();
            assert_eq!(whole, parts);
        }
        assert_eq!(derangements_with_first(4, 1).count(), 0);
    }

    #[test]
    fn sun_values() {
        let a3 = truncated_circulant(&CirculantSymbol::sun1(3).unwrap());
        assert_eq!(brute_det(&a3).unwrap(), CycNum::from_ratio(a3.context(), -1, 3));
        let b3 = truncated_circulant(&CirculantSymbol::sun2(3).unwrap());
        assert_eq!(brute_det(&b3).unwrap(), CycNum::from_ratio(b3.context(), -1, 3));
        let a5 = truncated_circulant(&CirculantSymbol::sun1(5).unwrap());
        assert_eq!(brute_det(&a5).unwrap(), CycNum::from_ratio(a5.context(), 4, 5));
        assert_eq!(brute_det_parallel(&a5).unwrap(), CycNum::from_ratio(a5.context(), 4, 5));
    }

    #[test]
    fn nonzero_diagonal_rejected() {
        let ctx = CyclotomicContext::new(5).unwrap();
        assert!(matches!(brute_det(&ExactMatrix::identity(&ctx, 3)), Err(Error::Precondition(_))));
    }

    #[test]
    fn big_path_agrees_with_i128_path() {
        let a = truncated_circulant(&CirculantSymbol::sun2(7).unwrap());
        let rows = IntegralRows::new(&a);
        assert_eq!(rows.sum_i128(derangements(6)).unwrap(), rows.sum_big(derangements(6)));
    }

    #[test]
    fn overflowing_entries_fall_back() {
        let ctx = CyclotomicContext::new(3).unwrap();
        let huge = CycNum::from_bigint(&ctx, BigInt::from(10).pow(30));
        let mut m = ExactMatrix::zeros(&ctx, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    m.set(i, j, huge.clone());
                }
            }
        }
        // two 3-cycles: 2·(10^30)^3
        let expect = CycNum::from_bigint(&ctx, BigInt::from(2) * BigInt::from(10).pow(90));
        assert_eq!(brute_det(&m).unwrap(), expect);
        assert_eq!(m.determinant().unwrap(), expect);
    }
}
