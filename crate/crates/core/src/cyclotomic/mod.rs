//! Exact arithmetic in the cyclotomic field Q(ζₙ).
//!
//! Elements are polynomials in an abstract primitive n-th root of unity ζ, stored reduced
//! modulo the n-th cyclotomic polynomial Φₙ. Because Φₙ is irreducible over Q the quotient
//! ring is a field, and since the reduced representative is unique, equality is a plain
//! coefficient comparison.

mod literal;
pub(crate) mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{precondition, Error, Result};

pub use poly::{cyclotomic_polynomial, format_int_poly};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

/// The field Q(ζₙ): conductor, Φₙ and a table of reduced powers of ζ.
pub struct CyclotomicContext {
    n: usize,
    phi: Vec<BigInt>,
    zeta_table: Vec<Vec<BigInt>>,
}

impl CyclotomicContext {
    pub fn new(n: usize) -> Result<Arc<Self>> {
        if n < 2 {
            return precondition(format!("cyclotomic conductor must be >= 2, got {n}"));
        }
        let phi = cyclotomic_polynomial(n);
        let degree = phi.len() - 1;
        let mut zeta_table = Vec::with_capacity(n);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..n {
            zeta_table.push(cur.clone());
            // multiply by x, then fold the overflow coefficient back through Φₙ
            let mut next = vec![BigInt::zero(); degree + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] = c.clone();
            }
            reduce_with(&phi, &mut next);
            cur = next;
        }
        Ok(Arc::new(Self { n, phi, zeta_table }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// deg Φₙ = φ(n).
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Φₙ, low degree first.
    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    fn zeta_coeffs(&self, k: i64) -> &[BigInt] {
        &self.zeta_table[k.rem_euclid(self.n as i64) as usize]
    }

    pub(crate) fn reduce(&self, p: &mut Vec<BigInt>) {
        reduce_with(&self.phi, p);
    }
}

// Φₙ and the power table are determined by n.
impl PartialEq for CyclotomicContext {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for CyclotomicContext {}

impl fmt::Debug for CyclotomicContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.n)
    }
}

/// Reduce `p` modulo the monic `phi` in place, leaving exactly deg(phi) coefficients.
fn reduce_with(phi: &[BigInt], p: &mut Vec<BigInt>) {
    let d = phi.len() - 1;
    if p.len() > d {
        for i in (d..p.len()).rev() {
            let c = std::mem::take(&mut p[i]);
            if c.is_zero() {
                continue;
            }
            for (t, q) in phi[..d].iter().enumerate() {
                if !q.is_zero() {
                    p[i - d + t] -= &c * q;
                }
            }
        }
    }
    p.resize(d, BigInt::zero());
}

/// An element of Q(ζₙ) in canonical form: integer numerator polynomial of degree < φ(n) over a
/// positive common denominator, with the gcd of all of them equal to one.
#[derive(Clone)]
pub struct CycNum {
    ctx: Arc<CyclotomicContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    fn from_parts(ctx: Arc<CyclotomicContext>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut out = Self { ctx, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        debug_assert_eq!(self.num.len(), self.ctx.degree());
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            for c in &mut self.num {
                if !c.is_zero() {
                    *c /= &g;
                }
            }
            self.den /= &g;
        }
    }

    pub fn zero(ctx: &Arc<CyclotomicContext>) -> Self {
        Self { ctx: ctx.clone(), num: vec![BigInt::zero(); ctx.degree()], den: BigInt::one() }
    }

    pub fn one(ctx: &Arc<CyclotomicContext>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<CyclotomicContext>, v: i64) -> Self {
        Self::from_bigint(ctx, BigInt::from(v))
    }

    pub fn from_bigint(ctx: &Arc<CyclotomicContext>, v: BigInt) -> Self {
        let mut out = Self::zero(ctx);
        out.num[0] = v;
        out
    }

    pub fn from_rational(ctx: &Arc<CyclotomicContext>, r: &ExactRational) -> Self {
        let mut num = vec![BigInt::zero(); ctx.degree()];
        num[0] = r.numer().clone();
        Self::from_parts(ctx.clone(), num, r.denom().clone())
    }

    pub fn from_ratio(ctx: &Arc<CyclotomicContext>, p: i64, q: i64) -> Self {
        Self::from_rational(ctx, &ExactRational::new(p.into(), q.into()))
    }

    /// Σ coeffs[i]·ζⁱ; any length is accepted and reduced modulo Φₙ.
    pub fn from_coeffs(ctx: &Arc<CyclotomicContext>, coeffs: &[ExactRational]) -> Self {
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> =
            coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        ctx.reduce(&mut num);
        Self::from_parts(ctx.clone(), num, den)
    }

    pub(crate) fn from_int_coeffs(ctx: &Arc<CyclotomicContext>, mut num: Vec<BigInt>, den: BigInt) -> Self {
        ctx.reduce(&mut num);
        Self::from_parts(ctx.clone(), num, den)
    }

    /// ζ^k; k is taken modulo n.
    pub fn zeta_pow(ctx: &Arc<CyclotomicContext>, k: i64) -> Self {
        Self { ctx: ctx.clone(), num: ctx.zeta_coeffs(k).to_vec(), den: BigInt::one() }
    }

    pub fn context(&self) -> &Arc<CyclotomicContext> {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n
    }

    /// Canonical coefficients c₀, …, c_{φ(n)−1} of Σ cᵢζⁱ.
    pub fn coeffs(&self) -> Vec<ExactRational> {
        self.num.iter().map(|c| ExactRational::new(c.clone(), self.den.clone())).collect()
    }

    pub(crate) fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<ExactRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| ExactRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx.n != other.ctx.n {
            return Err(Error::ContextMismatch { left: self.ctx.n, right: other.ctx.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Self, negate: bool) -> Self {
        let combine = |a: &BigInt, b: &BigInt| if negate { a - b } else { a + b };
        if self.den == other.den {
            let num = self.num.iter().zip(&other.num).map(|(a, b)| combine(a, b)).collect();
            return Self::from_parts(self.ctx.clone(), num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| combine(&(a * &other.den), &(b * &self.den)))
            .collect();
        Self::from_parts(self.ctx.clone(), num, &self.den * &other.den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut prod = poly::mul_int(&self.num, &other.num);
        if prod.is_empty() {
            return Self::zero(&self.ctx);
        }
        self.ctx.reduce(&mut prod);
        Self::from_parts(self.ctx.clone(), prod, &self.den * &other.den)
    }

    /// Multiply by an integer without a full polynomial product.
    pub fn scale_int(&self, k: i64) -> Self {
        let num = self.num.iter().map(|c| c * k).collect();
        Self::from_parts(self.ctx.clone(), num, self.den.clone())
    }

    pub fn scale(&self, r: &ExactRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.ctx.clone(), num, &self.den * r.denom())
    }

    /// Multiplicative inverse via the extended gcd of the representative with Φₙ over Q.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(&self.ctx, &r.recip()));
        }
        let a: Vec<ExactRational> = self.num.iter().map(|c| ExactRational::from_integer(c.clone())).collect();
        // Φₙ is irreducible, so a nonzero residue is always coprime to it.
        let s = poly::rat_inverse_mod(&a, &self.ctx.phi).expect("nonzero element of a field");
        Ok(Self::from_coeffs(&self.ctx, &s).scale(&ExactRational::from_integer(self.den.clone())))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Image under ζ ↦ ζ⁻¹, which is complex conjugation in every complex embedding.
    pub fn conj(&self) -> Self {
        let n = self.ctx.n;
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                out[(n - i) % n] += c;
            }
        }
        Self::from_int_coeffs(&self.ctx, out, self.den.clone())
    }

    /// Evaluate at ζ = e^(2πi/n). Working precision is that of `f64`, so requests beyond
    /// 15 significant digits are served at 15.
    pub fn to_complex(&self, precision: u32) -> Complex64 {
        let _digits = precision.clamp(1, 15);
        let n = self.ctx.n as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = ExactRational::new(c.clone(), self.den.clone()).to_f64().unwrap_or(f64::NAN);
            let angle = 2.0 * std::f64::consts::PI * (i as f64) / n;
            acc += Complex64::from_polar(coeff, angle);
        }
        acc
    }

    /// Render in the cyclotomic literal grammar, e.g. `2/3 + 1/3*z^1`.
    pub fn to_literal(&self) -> String {
        literal::format(self)
    }

    pub fn parse_literal(ctx: &Arc<CyclotomicContext>, text: &str) -> Result<Self> {
        literal::parse(ctx, text)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n == other.ctx.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycNum {}

impl std::hash::Hash for CycNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.n.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_literal())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[n={}]({})", self.ctx.n, self.to_literal())
    }
}

// Operator forms panic on a context mismatch; use the `checked_*` methods to get an error.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { ctx: self.ctx.clone(), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}
