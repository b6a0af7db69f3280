//! Dense univariate polynomial helpers. Coefficients are stored low degree first.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Quotient of `num` by the monic polynomial `den`; `None` if the division leaves a remainder.
pub(crate) fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    if num.len() <= dd {
        return if num.iter().all(Zero::is_zero) { Some(vec![]) } else { None };
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = std::mem::take(&mut rem[i + dd]);
        if c.is_zero() {
            continue;
        }
        for (t, d) in den[..dd].iter().enumerate() {
            rem[i + t] -= &c * d;
        }
        quot[i] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quot)
}

pub(crate) fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Φₙ by exact division of xⁿ − 1 by Φ_d for every proper divisor d of n.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut memo = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: usize, memo: &mut HashMap<usize, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = -BigInt::one();
    p[n] = BigInt::one();
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let phi_d = cyclotomic_memo(d, memo);
        p = div_exact_monic(&p, &phi_d).expect("Φ_d divides xⁿ − 1");
    }
    memo.insert(n, p.clone());
    p
}

fn rat_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    if num.len() <= dd {
        return (vec![], rem);
    }
    let lead_inv = den[dd].recip();
    let mut quot = vec![BigRational::zero(); num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (t, d) in den.iter().enumerate() {
            rem[i + t] -= &c * d;
        }
        quot[i] = c;
    }
    rem.truncate(dd);
    trim(&mut rem);
    (quot, rem)
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out: Vec<BigRational> = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the (irreducible) `modulus` over Q by the extended Euclidean algorithm.
/// Returns `None` when `a` is zero modulo `modulus`.
pub(crate) fn rat_inverse_mod(a: &[BigRational], modulus: &[BigInt]) -> Option<Vec<BigRational>> {
    let mut r0: Vec<BigRational> = modulus.iter().cloned().map(BigRational::from_integer).collect();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = rat_divmod(&r0, &r1);
        let s2 = rat_sub(&s0, &rat_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; anything of positive degree means `a` shares a factor with the modulus.
    if r0.len() != 1 {
        return None;
    }
    let g = r0[0].recip();
    Some(s0.into_iter().map(|c| c * &g).collect())
}

/// Human-readable polynomial in x, highest degree first, e.g. "x^2 - x + 1".
pub fn format_int_poly(p: &[BigInt]) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = match (i, mag.is_one()) {
            (0, _) => mag.to_string(),
            (1, true) => "x".to_string(),
            (1, false) => format!("{mag}*x"),
            (_, true) => format!("x^{i}"),
            (_, false) => format!("{mag}*x^{i}"),
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        terms.push((sign, body));
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (sign, body)) in terms.into_iter().enumerate() {
        match (k, sign) {
            (0, "-") => out.push('-'),
            (0, _) => {}
            (_, s) => {
                out.push(' ');
                out.push_str(s);
                out.push(' ');
            }
        }
        out.push_str(&body);
    }
    out
}
