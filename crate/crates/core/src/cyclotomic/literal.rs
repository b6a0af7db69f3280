//! Text form of field elements.
//!
//! ```text
//! literal := "0" | term { " + " term }
//! term    := coeff | coeff "*z^" exponent
//! coeff   := ["-"] digits [ "/" digits ]      (lowest terms, nonzero)
//! ```
//!
//! Terms appear in increasing exponent order and the constant term carries no `*z^0`.
//! The parser is more lenient than the printer: it accepts any whitespace around `+`,
//! `z^k` without a coefficient, repeated exponents and exponents ≥ φ(n) (all reduced).

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{CycNum, CyclotomicContext, ExactRational};
use crate::error::{Error, Result};

pub(super) fn format(x: &CycNum) -> String {
    let terms: Vec<String> = x
        .coeffs()
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| if i == 0 { c.to_string() } else { format!("{c}*z^{i}") })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn parse_coeff(s: &str) -> Result<ExactRational> {
    let bad = || Error::Parse(format!("bad coefficient {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(ExactRational::new(p, q))
}

pub(super) fn parse(ctx: &Arc<CyclotomicContext>, text: &str) -> Result<CycNum> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty literal".into()));
    }
    let mut coeffs = vec![ExactRational::zero(); ctx.n()];
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parse(format!("empty term in {text:?}")));
        }
        let (coeff, exp) = match term.split_once("z^") {
            Some((head, exp)) => {
                let exp: usize =
                    exp.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
                let head = head.trim();
                let coeff = match head.strip_suffix('*') {
                    Some(c) => parse_coeff(c)?,
                    None if head.is_empty() => ExactRational::from_integer(1.into()),
                    None if head == "-" => ExactRational::from_integer((-1).into()),
                    None => return Err(Error::Parse(format!("missing '*' in {term:?}"))),
                };
                (coeff, exp)
            }
            None => (parse_coeff(term)?, 0),
        };
        coeffs[exp % ctx.n()] += coeff;
    }
    Ok(CycNum::from_coeffs(ctx, &coeffs))
}
