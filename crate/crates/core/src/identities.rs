//! Verifiers for the root-of-unity determinant identities.
//!
//! For odd n > 1 and A the (n−1)×(n−1) matrix with zero diagonal and entries 1/(1 − ζ^(i−j)):
//!
//! ```text
//! det A  = (−1)^((n−1)/2) · ((n−1)/2)!² / n                         (sun1)
//! det A′ = (−1)^((n−1)/2) · ((n−2)!!)² / n,   A′ entries (1+ζ^(i−j))/(1−ζ^(i−j))   (sun2)
//! ```
//!
//! Each left side can be computed four independent ways ([`Method`]): the signed derangement
//! sum, Gaussian elimination, the integer spectrum of C₁ = A·B₁ read off in a Fourier basis, and
//! the circulant-minor formula det M_j = (1/n)·Π_{i≠s} λᵢ.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigInt;
use num_traits::One;
use web_time::Instant;

use crate::circulant::CirculantSymbol;
use crate::cyclotomic::{CycNum, ExactRational};
use crate::derangement::brute_det_parallel;
use crate::error::{precondition, Error, Result};
use crate::linalg::{
    assert_block_triangular, build_b_s, build_c_s, change_of_basis, eei_sides, truncated_circulant,
    verify_integer_spectrum, BasisSpec, ExactMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    Sun1,
    Sun2,
    Theorem3,
    Lemma1,
    Eei,
    Spectrum,
    Scaling,
}

impl Identity {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Sun1 => "sun1",
            Self::Sun2 => "sun2",
            Self::Theorem3 => "theorem3",
            Self::Lemma1 => "lemma1",
            Self::Eei => "eei",
            Self::Spectrum => "spectrum",
            Self::Scaling => "scaling",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Brute,
    Det,
    Spectrum,
    MinorThm,
    Direct,
}

impl Method {
    /// The four routes to a Sun determinant, in report order.
    pub const ROUTES: [Method; 4] = [Method::Brute, Method::Det, Method::Spectrum, Method::MinorThm];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Brute => "brute",
            Self::Det => "det",
            Self::Spectrum => "spectrum",
            Self::MinorThm => "minor_thm",
            Self::Direct => "direct",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "brute" => Self::Brute,
            "det" => Self::Det,
            "spectrum" => Self::Spectrum,
            "minor" | "minor_thm" => Self::MinorThm,
            "direct" => Self::Direct,
            other => return Err(Error::Parse(format!("unknown method {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: Identity,
    pub n: usize,
    pub method: Method,
    pub lhs: CycNum,
    pub rhs: CycNum,
    pub verified: bool,
    pub elapsed: Duration,
    pub details: String,
}

/// Which of the two Sun determinants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sun {
    One,
    Two,
}

impl Sun {
    pub fn identity(self) -> Identity {
        match self {
            Sun::One => Identity::Sun1,
            Sun::Two => Identity::Sun2,
        }
    }

    pub fn symbol(self, n: usize) -> Result<CirculantSymbol> {
        match self {
            Sun::One => CirculantSymbol::sun1(n),
            Sun::Two => CirculantSymbol::sun2(n),
        }
    }

    pub fn rhs(self, n: usize) -> Result<ExactRational> {
        match self {
            Sun::One => rhs_sun1(n),
            Sun::Two => rhs_sun2(n),
        }
    }

    /// A (or A′): the circulant with its last row and column removed.
    pub fn matrix(self, n: usize) -> Result<ExactMatrix> {
        Ok(truncated_circulant(&self.symbol(n)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest n for which the brute-force route may run.
    pub brute_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { brute_limit: 11 }
    }
}

fn require_odd(n: usize) -> Result<()> {
    if n <= 1 || n % 2 == 0 {
        return precondition("n must be odd and > 1");
    }
    Ok(())
}

fn sign_for(n: usize) -> i64 {
    if ((n - 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// (−1)^((n−1)/2) · ((n−1)/2)!² / n.
pub fn rhs_sun1(n: usize) -> Result<ExactRational> {
    require_odd(n)?;
    let f = factorial((n - 1) / 2);
    Ok(ExactRational::new(&f * &f * sign_for(n), BigInt::from(n)))
}

/// (−1)^((n−1)/2) · ((n−2)!!)² / n with (n−2)!! = 1·3·5⋯(n−2).
pub fn rhs_sun2(n: usize) -> Result<ExactRational> {
    require_odd(n)?;
    let df = (1..=n - 2).step_by(2).fold(BigInt::one(), |acc, i| acc * i);
    Ok(ExactRational::new(&df * &df * sign_for(n), BigInt::from(n)))
}

fn product(items: impl IntoIterator<Item = CycNum>, ctx: &std::sync::Arc<crate::CyclotomicContext>) -> CycNum {
    items.into_iter().fold(CycNum::one(ctx), |acc, x| acc * x)
}

/// (1/n)·Π_{i≠s} λᵢ.
fn minor_formula(lambdas: &[CycNum], s: usize, ctx: &std::sync::Arc<crate::CyclotomicContext>) -> CycNum {
    let n = lambdas.len();
    let prod = product(lambdas.iter().enumerate().filter(|&(i, _)| i != s).map(|(_, l)| l.clone()), ctx);
    prod.scale(&ExactRational::new(1.into(), n.into()))
}

pub fn verify_sun1(n: usize, method: Method) -> Result<VerificationReport> {
    verify_sun(Sun::One, n, method, &VerifyOptions::default())
}

pub fn verify_sun2(n: usize, method: Method) -> Result<VerificationReport> {
    verify_sun(Sun::Two, n, method, &VerifyOptions::default())
}

pub fn verify_sun(which: Sun, n: usize, method: Method, opts: &VerifyOptions) -> Result<VerificationReport> {
    require_odd(n)?;
    if method == Method::Brute && n > opts.brute_limit {
        return precondition(format!("n = {n} exceeds the brute-force limit {}", opts.brute_limit));
    }
    verify_sun_matrix(which, &which.matrix(n)?, method)
}

/// Run one route on a caller-supplied (n−1)×(n−1) matrix, comparing with the right side for
/// n = conductor. Used directly for negative controls on perturbed matrices.
pub fn verify_sun_matrix(which: Sun, a: &ExactMatrix, method: Method) -> Result<VerificationReport> {
    let ctx = a.context().clone();
    let n = ctx.n();
    require_odd(n)?;
    if a.rows() != n - 1 || a.cols() != n - 1 {
        return Err(Error::ShapeMismatch(format!("expected {0}x{0}, got {1}x{2}", n - 1, a.rows(), a.cols())));
    }
    let rhs = CycNum::from_rational(&ctx, &which.rhs(n)?);
    let start = Instant::now();
    let (lhs, route_ok, details) = match method {
        Method::Brute => (brute_det_parallel(a)?, true, format!("signed sum over D({})", n - 1)),
        Method::Det => {
            let how = if a.rows() >= crate::linalg::MODULAR_THRESHOLD {
                "multimodular elimination"
            } else {
                "gaussian elimination"
            };
            (a.determinant()?, true, how.to_string())
        }
        Method::Spectrum => match which {
            Sun::One => spectrum_route_sun1(a)?,
            Sun::Two => spectrum_route_sun2(a)?,
        },
        Method::MinorThm => minor_route(a)?,
        Method::Direct => return precondition("method 'direct' does not apply to sun1/sun2"),
    };
    let elapsed = start.elapsed();
    Ok(VerificationReport {
        identity: which.identity(),
        n,
        method,
        verified: route_ok && lhs == rhs,
        lhs,
        rhs,
        elapsed,
        details,
    })
}

/// det A = det(C₁)/det(B₁), with det(C₁) the diagonal product of C₁ written in the basis
/// {u_j : j ≠ (n−1)/2}. The route fails unless that representation is block-lower-triangular.
fn spectrum_route_sun1(a: &ExactMatrix) -> Result<(CycNum, bool, String)> {
    let ctx = a.context().clone();
    let n = ctx.n();
    let c1 = build_c_s(a, 1)?;
    let spec = BasisSpec::excluding(&ctx, (n - 1) / 2)?;
    let r = change_of_basis(&c1, &spec)?;
    let tri = assert_block_triangular(&r, &spec)?;
    let det_b1 = build_b_s(&ctx, 1)?.determinant()?;
    let det_c1 = tri.diagonal_product().expect("n >= 3");
    let lhs = det_c1.checked_div(&det_b1)?;
    let diag: Vec<String> = tri.diagonal.iter().map(CycNum::to_literal).collect();
    let details = if tri.is_block_triangular() {
        format!("C1 block-triangular in basis excluding u_{}; diagonal [{}]; det(B1) = {det_b1}", (n - 1) / 2, diag.join(", "))
    } else {
        format!("C1 NOT block-triangular: nonzero at {:?}", tri.violating_positions)
    };
    Ok((lhs, tri.is_block_triangular(), details))
}

/// det A′ = det(C′₁)/det(B₁), with the spectrum of C′₁ confirmed to be {±1, ±3, …, ±(n−2)} by
/// singularity checks on its representation in the basis {u₁, …, u_{n−1}}.
fn spectrum_route_sun2(a: &ExactMatrix) -> Result<(CycNum, bool, String)> {
    let ctx = a.context().clone();
    let n = ctx.n() as i64;
    let c1 = build_c_s(a, 1)?;
    let spec = BasisSpec::excluding(&ctx, 0)?;
    let r = change_of_basis(&c1, &spec)?;
    let candidates: Vec<i64> = (1..=n - 2).step_by(2).flat_map(|v| [v, -v]).collect();
    let det_b1 = build_b_s(&ctx, 1)?.determinant()?;
    let ok = verify_integer_spectrum(&r, &candidates)?;
    let (det_c1, details) = if ok {
        (
            product(candidates.iter().map(|&v| CycNum::from_int(&ctx, v)), &ctx),
            format!("spectrum of C1' is {}; det(B1) = {det_b1}", odd_set(n - 2)),
        )
    } else {
        (r.determinant()?, format!("C1' does not have spectrum {}; lhs from det of its Fourier form", odd_set(n - 2)))
    };
    Ok((det_c1.checked_div(&det_b1)?, ok, details))
}

/// "{±1, ±3, ±5}", abbreviated with an ellipsis once it gets long.
fn odd_set(max: i64) -> String {
    if max <= 7 {
        let items: Vec<String> = (1..=max).step_by(2).map(|v| format!("±{v}")).collect();
        format!("{{{}}}", items.join(", "))
    } else {
        format!("{{±1, ±3, …, ±{max}}}")
    }
}

/// Read the matrix as the minor M_n of a circulant (first column gives f(0..n−2), first row
/// gives f(−1)) and apply det M_n = (1/n)·Π_{i≠s} λᵢ. Fails if the matrix is not such a minor
/// or the recovered symbol has no vanishing DFT coefficient.
fn minor_route(a: &ExactMatrix) -> Result<(CycNum, bool, String)> {
    let ctx = a.context().clone();
    let n = ctx.n();
    let mut values: Vec<CycNum> = (0..n - 1).map(|k| a.get(k, 0).clone()).collect();
    values.push(a.get(0, 1).clone());
    let sym = CirculantSymbol::new(&ctx, values)?;
    let is_minor = truncated_circulant(&sym) == *a;
    let spectrum = sym.dft_eigenvalues();
    let Some(&s) = spectrum.zero_indices.first() else {
        return Ok((CycNum::zero(&ctx), false, "no vanishing DFT coefficient".to_string()));
    };
    let lhs = minor_formula(&spectrum.lambdas, s, &ctx);
    let details = if is_minor {
        format!("s = {s}")
    } else {
        format!("s = {s}; matrix is not a minor of the circulant generated by its first row and column")
    };
    Ok((lhs, is_minor, details))
}

/// det(M_j) = (1/n)·Π_{i≠s} λᵢ for every j ∈ {1..n} and every vanishing index s, one report per
/// (j, s) in that order.
pub fn verify_theorem3(sym: &CirculantSymbol) -> Result<Vec<VerificationReport>> {
    if !sym.check_condition_iii() {
        return precondition("condition (iii) fails: the circulant is not normal");
    }
    let spectrum = sym.dft_eigenvalues();
    if spectrum.zero_indices.is_empty() {
        return precondition("condition (ii) fails: no DFT coefficient vanishes");
    }
    let ctx = sym.context().clone();
    let n = sym.n();
    let m = sym.build_matrix();
    let mut reports = Vec::new();
    for j in 0..n {
        let start = Instant::now();
        let det = m.minor(j)?.determinant()?;
        let det_time = start.elapsed();
        for &s in &spectrum.zero_indices {
            let start = Instant::now();
            let rhs = minor_formula(&spectrum.lambdas, s, &ctx);
            reports.push(VerificationReport {
                identity: Identity::Theorem3,
                n,
                method: Method::MinorThm,
                verified: det == rhs,
                lhs: det.clone(),
                rhs,
                elapsed: det_time + start.elapsed(),
                details: format!("j = {}, s = {s}", j + 1),
            });
        }
    }
    Ok(reports)
}

/// Eigenvector-eigenvalue identity at eigen-index `i` (0-based) and minor `j` (0-based).
pub fn verify_eei_report(sym: &CirculantSymbol, i: usize, j: usize) -> Result<VerificationReport> {
    Ok(eei_reports_for(sym, &[(i, j)])?.remove(0))
}

/// All n² (i, j) pairs, ordered by j then i.
pub fn verify_eei_all(sym: &CirculantSymbol) -> Result<Vec<VerificationReport>> {
    let n = sym.n();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..n).map(move |i| (i, j))).collect();
    eei_reports_for(sym, &pairs)
}

fn eei_reports_for(sym: &CirculantSymbol, pairs: &[(usize, usize)]) -> Result<Vec<VerificationReport>> {
    if !sym.check_condition_iii() {
        return precondition("condition (iii) fails: the circulant is not normal");
    }
    let spectrum = sym.dft_eigenvalues();
    let m = sym.build_matrix();
    pairs
        .iter()
        .map(|&(i, j)| {
            let start = Instant::now();
            let (lhs, rhs) = eei_sides(sym, &spectrum, &m, i, j)?;
            Ok(VerificationReport {
                identity: Identity::Eei,
                n: sym.n(),
                method: Method::Direct,
                verified: lhs == rhs,
                lhs,
                rhs,
                elapsed: start.elapsed(),
                details: format!("i = {i}, j = {}", j + 1),
            })
        })
        .collect()
}

/// Tally of instance checks; becomes a report with lhs = passed and rhs = total.
struct Tally {
    identity: Identity,
    n: usize,
    passed: usize,
    total: usize,
    failures: Vec<String>,
    notes: Vec<String>,
    start: Instant,
}

impl Tally {
    fn new(identity: Identity, n: usize) -> Self {
        Self { identity, n, passed: 0, total: 0, failures: vec![], notes: vec![], start: Instant::now() }
    }

    fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(label());
        }
    }

    fn finish(self, ctx: &std::sync::Arc<crate::CyclotomicContext>) -> VerificationReport {
        let mut details = format!("{}/{} instances hold", self.passed, self.total);
        if !self.notes.is_empty() {
            details.push_str("; ");
            details.push_str(&self.notes.join("; "));
        }
        if !self.failures.is_empty() {
            details.push_str("; failed: ");
            details.push_str(&self.failures.join(", "));
        }
        VerificationReport {
            identity: self.identity,
            n: self.n,
            method: Method::Direct,
            lhs: CycNum::from_int(ctx, self.passed as i64),
            rhs: CycNum::from_int(ctx, self.total as i64),
            verified: self.passed == self.total,
            elapsed: self.start.elapsed(),
            details,
        }
    }
}

/// Every instance of the root-of-unity sums
///
/// ```text
/// (l1)  Σ_{j≠k} ζ^(js)/(1 − ζ^(k−j)) = ((n−1)/2 − s)·ζ^(ks) − 1/(1 − ζᵏ)
/// (l2)  Σ_{j≠k} ζ^(js)/(1 − ζ^(j−k)) = (s − (n+1)/2)·ζ^(ks) − 1/(1 − ζ^(−k))   (s > 0)
///                                     = (n−1)/2 − 1/(1 − ζ^(−k))               (s = 0)
/// (s1)  Σ_j ζ^(js)/(1 − ζ^(−j)) = (n−1)/2 − s          for s = 0, …, n−1
/// (s2)  Σ_j ζ^(js)/(1 − ζ^j)    = s − (n+1)/2          for s = 1, …, n
/// ```
///
/// with j, k ranging over 1..n−1 and s over 0..n−1 in (l1), (l2). (n−1)/2 is an exact rational,
/// so even n is allowed.
pub fn verify_lemma1(n: usize) -> Result<VerificationReport> {
    let ctx = crate::CyclotomicContext::new(n)?;
    let ni = n as i64;
    let inv1m: Vec<CycNum> = (0..ni)
        .map(|k| {
            if k == 0 {
                CycNum::zero(&ctx)
            } else {
                (CycNum::one(&ctx) - CycNum::zeta_pow(&ctx, k)).inv().expect("1 − ζᵏ ≠ 0")
            }
        })
        .collect();
    let inv_at = |k: i64| &inv1m[k.rem_euclid(ni) as usize];
    let z = |k: i64| CycNum::zeta_pow(&ctx, k);
    let half = |num: i64| CycNum::from_ratio(&ctx, num, 2);
    let mut tally = Tally::new(Identity::Lemma1, n);

    for s in 0..ni {
        for k in 1..ni {
            let l1 = (1..ni).filter(|&j| j != k).fold(CycNum::zero(&ctx), |acc, j| acc + z(j * s) * inv_at(k - j));
            let r1 = half(ni - 1 - 2 * s) * z(k * s) - inv_at(k);
            tally.check(l1 == r1, || format!("(l1) n={n} s={s} k={k}"));

            let l2 = (1..ni).filter(|&j| j != k).fold(CycNum::zero(&ctx), |acc, j| acc + z(j * s) * inv_at(j - k));
            let r2 = if s > 0 {
                half(2 * s - ni - 1) * z(k * s) - inv_at(-k)
            } else {
                half(ni - 1) - inv_at(-k)
            };
            tally.check(l2 == r2, || format!("(l2) n={n} s={s} k={k}"));
        }
    }
    for s in 0..ni {
        let sum = (1..ni).fold(CycNum::zero(&ctx), |acc, j| acc + z(j * s) * inv_at(-j));
        tally.check(sum == half(ni - 1 - 2 * s), || format!("(s1) n={n} s={s}"));
    }
    for s in 1..=ni {
        let sum = (1..ni).fold(CycNum::zero(&ctx), |acc, j| acc + z(j * s) * inv_at(j));
        tally.check(sum == half(2 * s - ni - 1), || format!("(s2) n={n} s={s}"));
    }
    if n % 2 == 0 {
        tally.notes.push("even n: (n−1)/2 evaluated as a half-integer".into());
    }
    Ok(tally.finish(&ctx))
}

/// det(B₁) = n; for every admissible s, det(C_s) = det(A)·det(B_s); and for prime n also
/// det(B_s) = n. For composite n the values of s with det(B_s) ≠ n are listed in the details,
/// as expected behaviour rather than failures.
pub fn verify_scaling(n: usize) -> Result<VerificationReport> {
    require_odd(n)?;
    let a = Sun::One.matrix(n)?;
    let ctx = a.context().clone();
    let ni = n as i64;
    let n_val = CycNum::from_int(&ctx, ni);
    let det_a = a.determinant()?;
    let prime = is_prime(n);
    let mut tally = Tally::new(Identity::Scaling, n);
    let mut off = Vec::new();
    for s in admissible_s(n) {
        let det_b = build_b_s(&ctx, s)?.determinant()?;
        if s == 1 || prime {
            tally.check(det_b == n_val, || format!("det(B_{s}) = {det_b}"));
        } else if det_b != n_val {
            off.push(format!("det(B_{s}) = {det_b}"));
        }
        let det_c = build_c_s(&a, s)?.determinant()?;
        tally.check(det_c == &det_a * &det_b, || format!("det(C_{s}) ≠ det(A)·det(B_{s})"));
        if prime {
            tally.check(det_c == &det_a * &n_val, || format!("det(C_{s}) ≠ n·det(A)"));
        }
    }
    if !off.is_empty() {
        tally.notes.push(format!("composite n, expected: {}", off.join(", ")));
    }
    Ok(tally.finish(&ctx))
}

/// The eigenvector relation behind "s is an eigenvalue of C_s":
/// Σ_{j≠k} (1 − ζ^(j((n−1)/2 − t)))·ζ^(jt)/(1 − ζ^(k−j)) = ((n−1)/2 − t)·ζ^(kt) for every
/// t ∈ {0..n−1} and k ∈ {1..n−1} (t = (n−1)/2 included), and det(s·I − C_s) = 0 for every
/// s ∈ {±1, …, ±(n−1)/2}.
pub fn verify_c_s_eigenvalue(n: usize) -> Result<VerificationReport> {
    require_odd(n)?;
    let a = Sun::One.matrix(n)?;
    let ctx = a.context().clone();
    let ni = n as i64;
    let m = (ni - 1) / 2;
    let z = |k: i64| CycNum::zeta_pow(&ctx, k);
    let inv1m: Vec<CycNum> = (1..ni).map(|k| (CycNum::one(&ctx) - z(k)).inv().expect("1 − ζᵏ ≠ 0")).collect();
    let inv_at = |k: i64| &inv1m[(k.rem_euclid(ni) - 1) as usize];
    let mut tally = Tally::new(Identity::Spectrum, n);
    for t in 0..ni {
        for k in 1..ni {
            let lhs = (1..ni).filter(|&j| j != k).fold(CycNum::zero(&ctx), |acc, j| {
                acc + (CycNum::one(&ctx) - z(j * (m - t))) * z(j * t) * inv_at(k - j)
            });
            let rhs = z(k * t).scale_int(m - t);
            tally.check(lhs == rhs, || format!("sum identity t={t} k={k}"));
        }
    }
    for s in admissible_s(n) {
        let c = build_c_s(&a, s)?;
        let ok = c.charpoly_eval(&CycNum::from_int(&ctx, s))?.is_zero();
        tally.check(ok, || format!("{s} is not an eigenvalue of C_{s}"));
    }
    Ok(tally.finish(&ctx))
}

/// {−(n−1)/2, …, −1, 1, …, (n−1)/2}.
pub fn admissible_s(n: usize) -> Vec<i64> {
    let m = (n as i64 - 1) / 2;
    (-m..=m).filter(|&s| s != 0).collect()
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> ExactRational {
        ExactRational::new(p.into(), d.into())
    }

    #[test]
    fn right_sides() {
        assert_eq!(rhs_sun1(3).unwrap(), q(-1, 3));
        assert_eq!(rhs_sun1(5).unwrap(), q(4, 5));
        assert_eq!(rhs_sun1(9).unwrap(), q(64, 1));
        assert_eq!(rhs_sun2(3).unwrap(), q(-1, 3));
        assert_eq!(rhs_sun2(5).unwrap(), q(9, 5));
        assert_eq!(rhs_sun2(7).unwrap(), q(-225, 7));
        assert!(rhs_sun1(4).is_err());
        assert!(rhs_sun2(1).is_err());
    }

    #[test]
    fn method_names() {
        assert_eq!("minor".parse::<Method>().unwrap(), Method::MinorThm);
        assert_eq!(Method::MinorThm.to_string(), "minor_thm");
        assert!("fast".parse::<Method>().is_err());
    }

    #[test]
    fn sun1_routes_small() {
        let r = verify_sun1(3, Method::Brute).unwrap();
        assert!(r.verified);
        assert_eq!(r.lhs.as_rational(), Some(q(-1, 3)));
        let r = verify_sun1(5, Method::MinorThm).unwrap();
        assert!(r.verified, "{}", r.details);
        assert_eq!(r.details, "s = 2");
        let r = verify_sun1(9, Method::Spectrum).unwrap();
        assert!(r.verified, "{}", r.details);
        assert_eq!(r.lhs.as_rational(), Some(q(64, 1)));
    }

    #[test]
    fn sun2_routes_small() {
        assert!(verify_sun2(3, Method::Det).unwrap().verified);
        let r = verify_sun2(5, Method::MinorThm).unwrap();
        assert!(r.verified);
        assert_eq!(r.lhs.as_rational(), Some(q(9, 5)));
        let r = verify_sun2(7, Method::Brute).unwrap();
        assert!(r.verified);
        assert_eq!(r.lhs.as_rational(), Some(q(-225, 7)));
        assert!(verify_sun2(7, Method::Spectrum).unwrap().verified);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(verify_sun1(4, Method::Det), Err(Error::Precondition(_))));
        assert!(matches!(verify_sun1(13, Method::Brute), Err(Error::Precondition(_))));
        assert!(verify_sun1(5, Method::Direct).is_err());
        let opts = VerifyOptions { brute_limit: 3 };
        assert!(verify_sun(Sun::One, 5, Method::Brute, &opts).is_err());
    }

    #[test]
    fn theorem3_sun1_n5() {
        let reports = verify_theorem3(&CirculantSymbol::sun1(5).unwrap()).unwrap();
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert!(r.verified);
            assert_eq!(r.lhs.as_rational(), Some(q(4, 5)));
        }
        assert_eq!(reports[4].details, "j = 5, s = 2");
    }

    #[test]
    fn theorem3_rejects_shift() {
        let ctx = crate::CyclotomicContext::new(4).unwrap();
        let vals = (0..4).map(|k| CycNum::from_int(&ctx, (k == 1) as i64)).collect();
        let shift = CirculantSymbol::new(&ctx, vals).unwrap();
        let err = verify_theorem3(&shift).unwrap_err();
        assert!(err.to_string().contains("condition (ii)"), "{err}");
    }

    #[test]
    fn lemma_examples() {
        let r = verify_lemma1(3).unwrap();
        assert!(r.verified, "{}", r.details);
        assert_eq!(r.rhs, CycNum::from_int(r.lhs.context(), 2 * 3 * 2 + 2 * 3));
        assert!(verify_lemma1(5).unwrap().verified);
        assert!(verify_lemma1(4).unwrap().verified);
    }

    #[test]
    fn scaling_examples() {
        let r = verify_scaling(7).unwrap();
        assert!(r.verified, "{}", r.details);
        let r9 = verify_scaling(9).unwrap();
        assert!(r9.verified, "{}", r9.details);
        assert!(r9.details.contains("det(B_3) = 0"), "{}", r9.details);
        assert!(r9.details.contains("det(B_-3) = 0"), "{}", r9.details);
    }

    #[test]
    fn c_s_eigen_examples() {
        for n in [3usize, 5, 7] {
            let r = verify_c_s_eigenvalue(n).unwrap();
            assert!(r.verified, "{}", r.details);
        }
    }

    #[test]
    fn eei_report_shape() {
        let sym = CirculantSymbol::sun2(5).unwrap();
        let all = verify_eei_all(&sym).unwrap();
        assert_eq!(all.len(), 25);
        assert!(all.iter().all(|r| r.verified));
        assert_eq!(verify_eei_report(&sym, 2, 4).unwrap().details, "i = 2, j = 5");
    }
}
