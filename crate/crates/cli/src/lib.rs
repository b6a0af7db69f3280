//! Command-line front end. [`run`] takes the argument list and output streams and returns the
//! process exit code: 0 when every report verified, 1 on any mismatch, 2 on usage or
//! precondition errors.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use cycdet::circulant::{scan_abc, SymbolSpec};
use cycdet::identities::{
    verify_c_s_eigenvalue, verify_eei_all, verify_eei_report, verify_lemma1, verify_scaling, verify_sun,
    verify_theorem3, Method, Sun, VerificationReport, VerifyOptions,
};
use cycdet::{cyclotomic_polynomial, CycNum};

#[derive(Parser, Debug)]
#[command(name = "cycdet", version, about = "Exact verification of root-of-unity determinant identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite and print one report per check.
    Verify(VerifyArgs),
    /// Print the exact DFT eigenvalues of a circulant symbol.
    Spectrum(SpectrumArgs),
    /// List (a, b, c) symbols with a vanishing eigenvalue whose circulant is normal.
    Scan(ScanArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Target {
    Sun1,
    Sun2,
    Theorem3,
    Lemma1,
    /// det(B_s) and det(C_s) facts, followed by the C_s eigenvalue checks.
    Scaling,
    Eei,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    target: Target,
    #[arg(long, conflicts_with = "n_range")]
    n: Option<usize>,
    /// Inclusive range A..B with optional step, e.g. 3..51:2.
    #[arg(long = "n-range", value_name = "A..B:STEP")]
    n_range: Option<NRange>,
    /// Route(s) for sun1/sun2, comma separated: brute, det, spectrum, minor.
    #[arg(long, value_delimiter = ',')]
    method: Vec<String>,
    /// sun1, sun2 or abc:a,b,c (theorem3 and eei only; default sun1).
    #[arg(long)]
    symbol: Option<SymbolSpec>,
    /// Eigenvalue index, 0-based (eei only).
    #[arg(long)]
    i: Option<usize>,
    /// Deleted row/column, 1-based (eei only).
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    json: bool,
    #[arg(long = "brute-limit", default_value_t = VerifyOptions::default().brute_limit)]
    brute_limit: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Compare the JSON output byte-wise against this file. Implies --json and --no-timing.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Report elapsed_ms as 0 so output is reproducible.
    #[arg(long = "no-timing")]
    no_timing: bool,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    symbol: SymbolSpec,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    n: usize,
    /// Scan |a|, |b| up to this bound.
    #[arg(long, default_value_t = 3)]
    bound: i64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct NRange {
    start: usize,
    end: usize,
    step: usize,
}

impl NRange {
    fn values(&self) -> Vec<usize> {
        (self.start..=self.end).step_by(self.step).collect()
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("malformed range {s:?}, expected A..B or A..B:STEP");
        let (span, step) = match s.split_once(':') {
            Some((span, step)) => (span, step.trim().parse::<usize>().map_err(|_| bad())?),
            None => (s, 1),
        };
        let (a, b) = span.split_once("..").ok_or_else(bad)?;
        let start = a.trim().parse().map_err(|_| bad())?;
        let end = b.trim().parse().map_err(|_| bad())?;
        if step == 0 || start > end {
            return Err(bad());
        }
        Ok(Self { start, end, step })
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    identity: &'a str,
    n: usize,
    method: &'a str,
    lhs: String,
    rhs: String,
    verified: bool,
    elapsed_ms: u64,
    details: &'a str,
}

impl<'a> JsonReport<'a> {
    fn new(r: &'a VerificationReport, timing: bool) -> Self {
        Self {
            identity: r.identity.as_str(),
            n: r.n,
            method: r.method.as_str(),
            lhs: r.lhs.to_literal(),
            rhs: r.rhs.to_literal(),
            verified: r.verified,
            elapsed_ms: if timing { r.elapsed.as_millis() as u64 } else { 0 },
            details: &r.details,
        }
    }
}

/// One unit of work; expands to one or more reports.
#[derive(Clone, Debug)]
enum Job {
    Sun { which: Sun, n: usize, method: Method },
    Theorem3 { symbol: SymbolSpec, n: usize },
    Lemma1 { n: usize },
    Scaling { n: usize },
    Eei { symbol: SymbolSpec, n: usize, i: Option<usize>, j: Option<usize> },
}

impl Job {
    fn run(&self, opts: &VerifyOptions) -> cycdet::Result<Vec<VerificationReport>> {
        match *self {
            Job::Sun { which, n, method } => Ok(vec![verify_sun(which, n, method, opts)?]),
            Job::Theorem3 { symbol, n } => verify_theorem3(&symbol.build(n)?),
            Job::Lemma1 { n } => Ok(vec![verify_lemma1(n)?]),
            Job::Scaling { n } => Ok(vec![verify_scaling(n)?, verify_c_s_eigenvalue(n)?]),
            Job::Eei { symbol, n, i, j } => {
                let sym = symbol.build(n)?;
                match (i, j) {
                    (Some(i), Some(j)) => Ok(vec![verify_eei_report(&sym, i, j - 1)?]),
                    (None, None) => verify_eei_all(&sym),
                    (Some(i), None) => (0..n).map(|j| verify_eei_report(&sym, i, j)).collect(),
                    (None, Some(j)) => (0..n).map(|i| verify_eei_report(&sym, i, j - 1)).collect(),
                }
            }
        }
    }
}

/// A usage or precondition problem, reported with exit code 2.
struct UsageError(String);

impl<E: fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(args) => run_verify(args, out, err),
        Command::Spectrum(args) => run_spectrum(args, out),
        Command::Scan(args) => run_scan(args, out),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            let _ = writeln!(err, "\nFor more information, try '--help'.");
            2
        }
    }
}

fn plan(args: &VerifyArgs) -> Result<Vec<Job>, UsageError> {
    let ns = match (&args.n, &args.n_range) {
        (Some(n), None) => vec![*n],
        (None, Some(r)) => r.values(),
        _ => return Err(UsageError("one of --n or --n-range is required".into())),
    };
    let is_sun = matches!(args.target, Target::Sun1 | Target::Sun2);
    if !args.method.is_empty() && !is_sun {
        return Err(UsageError("--method applies only to sun1 and sun2".into()));
    }
    if args.symbol.is_some() && !matches!(args.target, Target::Theorem3 | Target::Eei) {
        return Err(UsageError("--symbol applies only to theorem3 and eei".into()));
    }
    if (args.i.is_some() || args.j.is_some()) && args.target != Target::Eei {
        return Err(UsageError("--i and --j apply only to eei".into()));
    }
    if args.workers == 0 {
        return Err(UsageError("--workers must be at least 1".into()));
    }
    let mut methods: Vec<Method> = if args.method.is_empty() {
        vec![Method::Det]
    } else {
        args.method.iter().map(|m| m.parse::<Method>()).collect::<Result<_, _>>()?
    };
    if methods.contains(&Method::Direct) {
        return Err(UsageError("method 'direct' does not apply to sun1/sun2".into()));
    }
    methods.sort();
    methods.dedup();

    let symbol = args.symbol.unwrap_or(SymbolSpec::Sun1);
    let mut jobs = Vec::new();
    for &n in &ns {
        let odd_required = is_sun
            || args.target == Target::Scaling
            || (matches!(args.target, Target::Theorem3 | Target::Eei) && symbol.needs_odd_n());
        if odd_required && (n <= 1 || n % 2 == 0) {
            return Err(UsageError("n must be odd and > 1".into()));
        }
        if n <= 1 {
            return Err(UsageError("n must be > 1".into()));
        }
        match args.target {
            Target::Sun1 | Target::Sun2 => {
                let which = if args.target == Target::Sun1 { Sun::One } else { Sun::Two };
                for &method in &methods {
                    if method == Method::Brute && n > args.brute_limit {
                        return Err(UsageError(format!(
                            "n = {n} exceeds the brute-force limit {} (raise it with --brute-limit)",
                            args.brute_limit
                        )));
                    }
                    jobs.push(Job::Sun { which, n, method });
                }
            }
            Target::Theorem3 => jobs.push(Job::Theorem3 { symbol, n }),
            Target::Lemma1 => jobs.push(Job::Lemma1 { n }),
            Target::Scaling => jobs.push(Job::Scaling { n }),
            Target::Eei => {
                if let Some(i) = args.i.filter(|&i| i >= n) {
                    return Err(UsageError(format!("--i {i} out of range 0..{}", n - 1)));
                }
                if let Some(j) = args.j.filter(|&j| j == 0 || j > n) {
                    return Err(UsageError(format!("--j {j} out of range 1..{n}")));
                }
                jobs.push(Job::Eei { symbol, n, i: args.i, j: args.j });
            }
        }
    }
    Ok(jobs)
}

fn run_verify(mut args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, UsageError> {
    if args.golden.is_some() {
        args.json = true;
        args.no_timing = true;
    }
    let jobs = plan(&args)?;
    let opts = VerifyOptions { brute_limit: args.brute_limit };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.workers).build()?;
    // par_iter().collect() keeps job order, so output does not depend on the worker count.
    let results: Vec<cycdet::Result<Vec<VerificationReport>>> =
        pool.install(|| jobs.par_iter().map(|job| job.run(&opts)).collect());
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }

    let timing = !args.no_timing;
    if args.json {
        let json: Vec<JsonReport> = reports.iter().map(|r| JsonReport::new(r, timing)).collect();
        let mut text = serde_json::to_string_pretty(&json)?;
        text.push('\n');
        out.write_all(text.as_bytes())?;
        if let Some(path) = &args.golden {
            let expected = std::fs::read(path).map_err(|e| format!("cannot read golden file {}: {e}", path.display()))?;
            if expected != text.as_bytes() {
                writeln!(err, "golden mismatch: output differs from {}", path.display())?;
                return Ok(1);
            }
        }
    } else {
        for r in &reports {
            writeln!(out, "{}", human_line(r, timing))?;
        }
        let ok = reports.iter().filter(|r| r.verified).count();
        writeln!(out, "{ok}/{} verified", reports.len())?;
    }
    Ok(if reports.iter().all(|r| r.verified) { 0 } else { 1 })
}

fn human_line(r: &VerificationReport, timing: bool) -> String {
    let status = if r.verified { "verified" } else { "MISMATCH" };
    let mut line = format!(
        "{} n={} method={} lhs={} rhs={} {status}",
        r.identity,
        r.n,
        r.method,
        r.lhs.to_literal(),
        r.rhs.to_literal()
    );
    if timing {
        line.push_str(&format!(" ({} ms)", r.elapsed.as_millis()));
    }
    if !r.details.is_empty() {
        line.push_str(&format!(" [{}]", r.details));
    }
    line
}

#[derive(Serialize)]
struct JsonSpectrum {
    symbol: String,
    n: usize,
    cyclotomic_polynomial: String,
    eigenvalues: Vec<String>,
    zero_indices: Vec<usize>,
    normal: bool,
}

fn run_spectrum(args: SpectrumArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let sym = args.symbol.build(args.n)?;
    let spectrum = sym.dft_eigenvalues();
    let report = JsonSpectrum {
        symbol: args.symbol.to_string(),
        n: args.n,
        cyclotomic_polynomial: cycdet::cyclotomic::format_int_poly(&cyclotomic_polynomial(args.n)),
        eigenvalues: spectrum.lambdas.iter().map(CycNum::to_literal).collect(),
        zero_indices: spectrum.zero_indices.clone(),
        normal: sym.check_condition_iii(),
    };
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        writeln!(out, "symbol {} over Q(zeta_{}), Phi_{} = {}", report.symbol, args.n, args.n, report.cyclotomic_polynomial)?;
        for (i, l) in report.eigenvalues.iter().enumerate() {
            writeln!(out, "lambda_{i} = {l}")?;
        }
        writeln!(out, "zero indices: {:?}", report.zero_indices)?;
        writeln!(out, "normal: {}", report.normal)?;
    }
    Ok(0)
}

fn run_scan(args: ScanArgs, out: &mut dyn Write) -> Result<i32, UsageError> {
    let found = scan_abc(args.n, args.bound)?;
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&found)?)?;
    } else {
        for (a, b, c) in &found {
            writeln!(out, "abc:{a},{b},{c}")?;
        }
        writeln!(out, "{} symbols", found.len())?;
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("3..9:2".parse::<NRange>().unwrap().values(), vec![3, 5, 7, 9]);
        assert_eq!("2..4".parse::<NRange>().unwrap().values(), vec![2, 3, 4]);
        assert!("9..3".parse::<NRange>().is_err());
        assert!("3..9:0".parse::<NRange>().is_err());
        assert!("3-9".parse::<NRange>().is_err());
    }
}
