//! Browser bindings for the demo page in `www/`. Each exported function takes plain values and
//! returns a JSON string; the logic lives in ordinary functions so it can be tested natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use cycdet::identities::{verify_sun, Method, Sun, VerificationReport, VerifyOptions};
use cycdet::linalg::eei_sides;
use cycdet::{cyclotomic_polynomial, CycNum, SymbolSpec};

/// Keeps single-threaded browser runs under a few seconds.
const MAX_SPECTRUM_N: usize = 64;
const MAX_VERIFY_N: usize = 31;
const MAX_GRID_N: usize = 15;
const BROWSER_BRUTE_LIMIT: usize = 9;

#[derive(Serialize)]
struct Eigenvalue {
    exact: String,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct Spectrum {
    symbol: String,
    n: usize,
    cyclotomic_polynomial: String,
    eigenvalues: Vec<Eigenvalue>,
    zero_indices: Vec<usize>,
    normal: bool,
}

#[derive(Serialize)]
struct Report {
    identity: &'static str,
    n: usize,
    method: &'static str,
    lhs: String,
    rhs: String,
    verified: bool,
    elapsed_ms: f64,
    details: String,
}

impl From<VerificationReport> for Report {
    fn from(r: VerificationReport) -> Self {
        Self {
            identity: r.identity.as_str(),
            n: r.n,
            method: r.method.as_str(),
            lhs: r.lhs.to_literal(),
            rhs: r.rhs.to_literal(),
            verified: r.verified,
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
            details: r.details,
        }
    }
}

#[derive(Serialize)]
struct EeiGrid {
    symbol: String,
    n: usize,
    eigenvalues: Vec<String>,
    /// cells[i][j]: identity at eigen-index i with row/column j + 1 deleted.
    cells: Vec<Vec<EeiCell>>,
    all_verified: bool,
}

#[derive(Serialize)]
struct EeiCell {
    lhs: String,
    rhs: String,
    verified: bool,
}

fn check_n(n: usize, max: usize) -> Result<(), String> {
    if n < 2 || n > max {
        return Err(format!("n must be between 2 and {max} in the browser demo"));
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn spectrum_json(symbol: &str, n: usize) -> Result<String, String> {
    check_n(n, MAX_SPECTRUM_N)?;
    let spec: SymbolSpec = symbol.parse().map_err(|e: cycdet::Error| e.to_string())?;
    let sym = spec.build(n).map_err(|e| e.to_string())?;
    let spectrum = sym.dft_eigenvalues();
    to_json(&Spectrum {
        symbol: spec.to_string(),
        n,
        cyclotomic_polynomial: cycdet::cyclotomic::format_int_poly(&cyclotomic_polynomial(n)),
        eigenvalues: spectrum
            .lambdas
            .iter()
            .map(|l| {
                let z = l.to_complex(15);
                Eigenvalue { exact: l.to_literal(), re: z.re, im: z.im }
            })
            .collect(),
        zero_indices: spectrum.zero_indices,
        normal: sym.check_condition_iii(),
    })
}

/// `method` is one of brute, det, spectrum, minor, or all (brute only while n ≤ 9).
pub fn verify_json(identity: &str, n: usize, method: &str) -> Result<String, String> {
    check_n(n, MAX_VERIFY_N)?;
    let which = match identity {
        "sun1" => Sun::One,
        "sun2" => Sun::Two,
        other => return Err(format!("unknown identity {other:?}, expected sun1 or sun2")),
    };
    let methods: Vec<Method> = if method == "all" {
        Method::ROUTES.into_iter().filter(|&m| m != Method::Brute || n <= BROWSER_BRUTE_LIMIT).collect()
    } else {
        vec![method.parse().map_err(|e: cycdet::Error| e.to_string())?]
    };
    let opts = VerifyOptions { brute_limit: BROWSER_BRUTE_LIMIT };
    let reports = methods
        .into_iter()
        .map(|m| verify_sun(which, n, m, &opts).map(Report::from).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    to_json(&reports)
}

pub fn eei_grid_json(symbol: &str, n: usize) -> Result<String, String> {
    check_n(n, MAX_GRID_N)?;
    let spec: SymbolSpec = symbol.parse().map_err(|e: cycdet::Error| e.to_string())?;
    let sym = spec.build(n).map_err(|e| e.to_string())?;
    if !sym.check_condition_iii() {
        return Err("the circulant is not normal".into());
    }
    let spectrum = sym.dft_eigenvalues();
    let m = sym.build_matrix();
    let cells = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (lhs, rhs) = eei_sides(&sym, &spectrum, &m, i, j).map_err(|e| e.to_string())?;
                    Ok(EeiCell { verified: lhs == rhs, lhs: lhs.to_literal(), rhs: rhs.to_literal() })
                })
                .collect::<Result<Vec<_>, String>>()
        })
        .collect::<Result<Vec<_>, String>>()?;
    let all_verified = cells.iter().flatten().all(|c: &EeiCell| c.verified);
    to_json(&EeiGrid {
        symbol: spec.to_string(),
        n,
        eigenvalues: spectrum.lambdas.iter().map(CycNum::to_literal).collect(),
        cells,
        all_verified,
    })
}

#[wasm_bindgen]
pub fn spectrum(symbol: &str, n: usize) -> Result<String, JsValue> {
    spectrum_json(symbol, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify(identity: &str, n: usize, method: &str) -> Result<String, JsValue> {
    verify_json(identity, n, method).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn eei_grid(symbol: &str, n: usize) -> Result<String, JsValue> {
    eei_grid_json(symbol, n).map_err(|e| JsValue::from_str(&e))
}
