//! Multimodular determinant over Z[ζ].
//!
//! Rows are scaled to integer polynomials, which are read as elements of Z[x]/(xⁿ − 1). That ring
//! maps onto Z[ζ] by reduction mod Φₙ, and determinants commute with the map. For a prime
//! p ≡ 1 (mod n) with a primitive n-th root r, Z[x]/(xⁿ − 1) ⊗ F_p splits as Fₚⁿ via x ↦ rᵏ, so
//! the determinant polynomial is recovered mod p from n scalar determinants and an inverse DFT.
//! Its coefficients are averages of the complex values det(Ã(ωᵏ)), hence bounded by Hadamard's
//! inequality, which fixes how many primes the CRT needs.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use primal_check::miller_rabin;

use crate::cyclotomic::CycNum;
use crate::linalg::ExactMatrix;

/// Primes stay below 2⁶² so that sums of two residues never overflow.
const PRIME_CEILING: u64 = 1 << 62;

pub(crate) fn determinant(m: &ExactMatrix) -> CycNum {
    let ctx = m.context().clone();
    let n = ctx.n() as u64;
    let dim = m.rows();

    // Row i is scaled by scale[i] so that every entry becomes an integer polynomial.
    let mut scale_total = BigInt::one();
    let mut polys: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(dim);
    let mut log2_bound = 0.0f64;
    for i in 0..dim {
        let row = m.row(i);
        let l = row.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denominator()));
        let mut norm_sq = 0.0f64;
        let row_polys: Vec<Vec<BigInt>> = row
            .iter()
            .map(|e| {
                let f = &l / e.denominator();
                let p: Vec<BigInt> = e.numerator().iter().map(|c| c * &f).collect();
                let l1: f64 = p.iter().map(|c| big_to_f64_abs(c)).sum();
                norm_sq += l1 * l1;
                p
            })
            .collect();
        if norm_sq == 0.0 {
            return CycNum::zero(&ctx);
        }
        log2_bound += 0.5 * norm_sq.log2();
        scale_total *= l;
        polys.push(row_polys);
    }

    // Need the prime product to exceed twice the coefficient bound; a few bits of slack cover
    // the float rounding in the bound itself.
    let needed_bits = log2_bound.max(0.0) + 8.0;
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); n as usize];
    let mut modulus = BigInt::one();
    let mut bits = 0.0f64;
    let mut primes = PrimeStream::new(n);
    while bits < needed_bits {
        let (p, root) = primes.next_prime();
        let residues = det_poly_mod_p(&polys, dim, n, p, root);
        crt_accumulate(&mut coeffs, &modulus, &residues, p);
        modulus *= p;
        bits += (p as f64).log2();
    }
    let half = &modulus >> 1;
    for c in &mut coeffs {
        if *c > half {
            *c -= &modulus;
        }
    }
    CycNum::from_int_coeffs(&ctx, coeffs, BigInt::one()).scale(&crate::ExactRational::new(
        BigInt::one(),
        scale_total,
    ))
}

fn big_to_f64_abs(c: &BigInt) -> f64 {
    c.abs().to_f64().unwrap_or(f64::INFINITY)
}

/// Coefficients, mod p, of det(Ã) in Z[x]/(xⁿ − 1).
fn det_poly_mod_p(polys: &[Vec<Vec<BigInt>>], dim: usize, n: u64, p: u64, root: u64) -> Vec<u64> {
    let reduced: Vec<Vec<Vec<u64>>> = polys
        .iter()
        .map(|row| row.iter().map(|poly| poly.iter().map(|c| big_mod(c, p)).collect()).collect())
        .collect();
    let powers: Vec<u64> = (0..n).scan(1u64, |acc, _| {
        let cur = *acc;
        *acc = mul_mod(*acc, root, p);
        Some(cur)
    })
    .collect();
    let values: Vec<u64> = (0..n as usize)
        .map(|k| {
            let mut a: Vec<Vec<u64>> = reduced
                .iter()
                .map(|row| row.iter().map(|poly| eval_at(poly, &powers, k, p)).collect())
                .collect();
            det_mod_p(&mut a, dim, p)
        })
        .collect();
    // d_j = n⁻¹ Σ_k v_k r^(−jk)
    let n_inv = pow_mod(n % p, p - 2, p);
    (0..n as usize)
        .map(|j| {
            let mut acc = 0u64;
            for (k, &v) in values.iter().enumerate() {
                let e = (n as usize - (j * k) % n as usize) % n as usize;
                acc = add_mod(acc, mul_mod(v, powers[e], p), p);
            }
            mul_mod(acc, n_inv, p)
        })
        .collect()
}

/// poly(r^k) with powers[i] = r^i.
fn eval_at(poly: &[u64], powers: &[u64], k: usize, p: u64) -> u64 {
    let n = powers.len();
    poly.iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .fold(0u64, |acc, (i, &c)| add_mod(acc, mul_mod(c, powers[(i * k) % n], p), p))
}

fn det_mod_p(a: &mut [Vec<u64>], dim: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for k in 0..dim {
        let Some(piv) = (k..dim).find(|&r| a[r][k] != 0) else {
            return 0;
        };
        if piv != k {
            a.swap(piv, k);
            det = p - det;
        }
        det = mul_mod(det, a[k][k], p);
        let inv = pow_mod(a[k][k], p - 2, p);
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            if row[k] == 0 {
                continue;
            }
            let f = mul_mod(row[k], inv, p);
            for j in k + 1..dim {
                row[j] = sub_mod(row[j], mul_mod(f, pivot_row[j], p), p);
            }
        }
    }
    det % p
}

/// Garner step: fold residues mod p into values known mod `modulus`.
fn crt_accumulate(values: &mut [BigInt], modulus: &BigInt, residues: &[u64], p: u64) {
    let m_mod_p = big_mod(modulus, p);
    let m_inv = pow_mod(m_mod_p, p - 2, p);
    for (x, &r) in values.iter_mut().zip(residues) {
        let diff = sub_mod(r, big_mod(x, p), p);
        let t = mul_mod(diff, m_inv, p);
        if t != 0 {
            *x += modulus * t;
        }
    }
}

fn big_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    match r.to_biguint() {
        Some(u) if r.sign() != Sign::Minus => u.to_u64().expect("residue below p"),
        _ => unreachable!("mod_floor by a positive modulus is non-negative"),
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Primes p ≡ 1 (mod n) descending from 2⁶², each with a primitive n-th root of unity.
struct PrimeStream {
    n: u64,
    next: u64,
    n_prime_factors: Vec<u64>,
}

impl PrimeStream {
    fn new(n: u64) -> Self {
        let start = (PRIME_CEILING - 1) / n * n + 1;
        let start = if start >= PRIME_CEILING { start - n } else { start };
        let mut factors = Vec::new();
        let mut rest = n;
        let mut d = 2;
        while d * d <= rest {
            if rest % d == 0 {
                factors.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            factors.push(rest);
        }
        Self { n, next: start, n_prime_factors: factors }
    }

    fn next_prime(&mut self) -> (u64, u64) {
        loop {
            let p = self.next;
            self.next -= self.n;
            if !miller_rabin(p) {
                continue;
            }
            let e = (p - 1) / self.n;
            for g in 2u64.. {
                let r = pow_mod(g, e, p);
                if self.n_prime_factors.iter().all(|&q| pow_mod(r, self.n / q, p) != 1) {
                    return (p, r);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::CirculantSymbol;
    use crate::cyclotomic::CyclotomicContext;
    use crate::linalg::truncated_circulant;

    #[test]
    fn prime_stream_roots_have_exact_order() {
        for n in [2u64, 3, 12, 51] {
            let mut s = PrimeStream::new(n);
            for _ in 0..3 {
                let (p, r) = s.next_prime();
                assert!(p < PRIME_CEILING && p % n == 1 && miller_rabin(p));
                assert_eq!(pow_mod(r, n, p), 1);
                assert!((1..n).all(|k| pow_mod(r, k, p) != 1));
            }
        }
    }

    #[test]
    fn agrees_with_elimination() {
        for n in [3usize, 5, 6, 9, 12, 15] {
            let ctx = CyclotomicContext::new(n).unwrap();
            let m = ExactMatrix::from_fn(&ctx, 4, 4, |i, j| {
                let z = CycNum::zeta_pow(&ctx, (i * j + i) as i64);
                z.scale(&crate::ExactRational::new(((i + 2 * j) as i64 - 3).into(), (j as i64 + 1).into()))
                    + CycNum::from_ratio(&ctx, i as i64 - 1, 7)
            });
            assert_eq!(determinant(&m), m.determinant_gauss().unwrap(), "n = {n}");
        }
        for n in [5usize, 7, 9, 11] {
            let a = truncated_circulant(&CirculantSymbol::sun1(n).unwrap());
            assert_eq!(determinant(&a), a.determinant_gauss().unwrap(), "sun1 n = {n}");
        }
    }

    #[test]
    fn zero_row_and_singular() {
        let ctx = CyclotomicContext::new(7).unwrap();
        let z = ExactMatrix::from_ints(&ctx, &[vec![1, 2], vec![0, 0]]).unwrap();
        assert!(determinant(&z).is_zero());
        let s = ExactMatrix::from_ints(&ctx, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(determinant(&s).is_zero());
        let big = ExactMatrix::from_ints(&ctx, &[vec![i64::MAX, 1], vec![1, i64::MAX]]).unwrap();
        assert_eq!(determinant(&big), big.determinant_gauss().unwrap());
    }
}
