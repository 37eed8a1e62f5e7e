//! Command-line surface: the symbol expression grammar, the `torsion`,
//! `verify`, `bounds` and `report` commands, and the JSON/CSV report formats.
//!
//! Exit codes: 0 ok, 1 check failure, 2 usage or parse error, 3 numeric
//! failure. `TORSIONLAB_THREADS` caps the worker pool.

mod parse;
mod report;

pub use parse::{parse_expr, parse_fourier, parse_symbol, Expr, ParseError, SymbolClass, SymbolExpr};
pub use report::{
    merge_series, ComplexValue, Disagreements, HistoryPoint, Inputs, MethodFailure, MethodResult, RunReport,
    SymbolInput,
};

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::funcalc::{calculus_discrepancy, exp_unitary_estimate, BoundReport, ExpEstimateOptions, FuncalcError};
use crate::function::FunctionSpec;
use crate::sections::Schedule;
use crate::torsion::{applicable_methods, compute, Method, RouteOptions, TorsionError};
use crate::verify::{run_suite, Suite, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

pub const THREADS_ENV: &str = "TORSIONLAB_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error in {which}: {source}")]
    Parse { which: String, source: ParseError },
    #[error(transparent)]
    Torsion(#[from] TorsionError),
    #[error(transparent)]
    Funcalc(#[from] FuncalcError),
    #[error("i/o: {0}")]
    Io(String),
    #[error("malformed report {path}: {msg}")]
    Report { path: String, msg: String },
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Report { .. } => EXIT_USAGE,
            CliError::Torsion(_) | CliError::Funcalc(_) | CliError::Io(_) => EXIT_NUMERIC,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "torsionlab", version, about = "Joint torsion of Toeplitz pairs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute τ(T_f, T_g) by every applicable method and compare.
    Torsion(TorsionArgs),
    /// Run a seeded property suite.
    Verify(VerifyArgs),
    /// Measure functional-calculus discrepancies against their bounds.
    Bounds(BoundsArgs),
    /// Merge JSON run reports into CSV series.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct TorsionArgs {
    #[arg(long = "f")]
    pub f: String,
    #[arg(long = "g")]
    pub g: String,
    /// all, det, tame, integral, factorized or exp
    #[arg(long, default_value = "all")]
    pub method: String,
    #[arg(long, default_value_t = 256)]
    pub nmax: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub basepoint: f64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// golden, steinberg, bounds, traces, index or all
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long = "corpus-size", default_value_t = 20)]
    pub corpus_size: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub phi: String,
    /// exp or poly:c0,c1,...
    #[arg(long = "func")]
    pub func: String,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t: Option<f64>,
    #[arg(long, default_value_t = 256)]
    pub nmax: usize,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[arg(long = "from", num_args = 0..)]
    pub from: Vec<PathBuf>,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Builds the global worker pool, capped by `TORSIONLAB_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| CliError::Usage(format!("{THREADS_ENV}={v} is not a count")))?;
    // A second call in the same process finds the pool already built.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    Ok(())
}

/// Parses arguments and runs the command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Torsion(a) => cmd_torsion(a, &mut out),
        Command::Verify(a) => cmd_verify(a, &mut out),
        Command::Bounds(a) => cmd_bounds(a, &mut out),
        Command::Report(a) => cmd_report(a, &mut out),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn parse_named(which: &str, text: &str) -> Result<SymbolExpr, CliError> {
    parse_symbol(text).map_err(|source| CliError::Parse { which: which.into(), source })
}

fn symbol_input(s: &SymbolExpr) -> SymbolInput {
    SymbolInput {
        source: s.source.clone(),
        normal_form: s.normal_form(),
        class: s.class.to_string(),
        exact_lowering: s.exact,
        winding: s.symbol.winding_number().ok(),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    Ok(BufWriter::new(File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?))
}

/// Runs the requested methods on a parsed pair and assembles the report.
pub fn run_torsion(args: &TorsionArgs) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let f = parse_named("--f", &args.f)?;
    let g = parse_named("--g", &args.g)?;
    if args.nmax == 0 {
        return Err(CliError::Usage("--nmax must be positive".into()));
    }
    let methods = if args.method == "all" {
        applicable_methods(&f.symbol, &g.symbol)?
    } else {
        let m: Method = args.method.parse().map_err(CliError::Usage)?;
        if m == Method::Lefschetz {
            return Err(CliError::Usage("lefschetz is not a pair method".into()));
        }
        vec![m]
    };
    let opts = RouteOptions { nmax: args.nmax, basepoint: args.basepoint };
    let outcomes: Vec<_> = methods
        .par_iter()
        .map(|&m| {
            let t = Instant::now();
            let r = compute(m, &f.symbol, &g.symbol, &opts);
            (m, r, t.elapsed().as_secs_f64() * 1e3)
        })
        .collect();
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for (m, r, ms) in outcomes {
        match r {
            Ok(r) => results.push(MethodResult::new(&r, ms)),
            Err(e) => failures.push(MethodFailure { method: m.name().into(), error: e.to_string() }),
        }
    }
    let disagreements = Disagreements::from_results(&results, args.tol);
    Ok(RunReport {
        inputs: Inputs {
            f: symbol_input(&f),
            g: symbol_input(&g),
            method: args.method.clone(),
            nmax: args.nmax,
            tol: args.tol,
            basepoint: args.basepoint,
        },
        results,
        failures,
        disagreements,
        runtime_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// 3 if any method failed, else 1 if any pair disagrees beyond its
/// allowance, else 0.
pub fn torsion_exit_code(report: &RunReport) -> i32 {
    if !report.failures.is_empty() {
        EXIT_NUMERIC
    } else if !report.disagreements.agree() {
        EXIT_CHECK
    } else {
        EXIT_OK
    }
}

pub fn cmd_torsion(args: &TorsionArgs, out: &mut impl Write) -> Result<i32, CliError> {
    let report = run_torsion(args)?;
    writeln!(out, "f = {}   [{}]", report.inputs.f.normal_form, report.inputs.f.class)?;
    writeln!(out, "g = {}   [{}]", report.inputs.g.normal_form, report.inputs.g.class)?;
    writeln!(out, "{:<11} {:>24} {:>24} {:>10} {:>10}", "method", "re", "im", "err", "ms")?;
    for r in &report.results {
        writeln!(
            out,
            "{:<11} {:>24.15e} {:>24.15e} {:>10.2e} {:>10.1}",
            r.method, r.value.re, r.value.im, r.err_estimate, r.wall_ms
        )?;
    }
    for fl in &report.failures {
        writeln!(out, "{:<11} FAILED: {}", fl.method, fl.error)?;
    }
    let code = torsion_exit_code(&report);
    writeln!(
        out,
        "max disagreement {:.3e} (tol {:.1e}): {}",
        report.disagreements.max(),
        args.tol,
        match code {
            EXIT_OK => "agree",
            EXIT_CHECK => "DISAGREE",
            _ => "method failure",
        }
    )?;
    if let Some(p) = &args.json {
        report.write_json(create(p)?)?;
    }
    if let Some(p) = &args.csv {
        report.write_csv(create(p)?)?;
    }
    Ok(code)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut impl Write) -> Result<i32, CliError> {
    let suite: Suite = args.suite.parse().map_err(CliError::Usage)?;
    let report = run_suite(suite, &VerifyOptions { seed: args.seed, corpus_size: args.corpus_size });
    writeln!(out, "{:<10} {:<44} {:>6}  detail", "suite", "check", "result")?;
    for c in &report.checks {
        writeln!(out, "{:<10} {:<44} {:>6}  {}", c.suite, c.name, if c.pass { "PASS" } else { "FAIL" }, c.detail)?;
    }
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
    writeln!(out, "{} checks, {} failed (seed {})", report.checks.len(), failed.len(), args.seed)?;
    for c in &failed {
        let replay = serde_json::json!({ "suite": c.suite, "check": c.name, "seed": args.seed, "instance": c.instance });
        eprintln!("replay: {replay}");
    }
    Ok(if failed.is_empty() { EXIT_OK } else { EXIT_CHECK })
}

/// `exp` or `poly:c0,c1,...` (ascending real or complex coefficients).
pub fn parse_function(text: &str) -> Result<FunctionSpec, CliError> {
    if text == "exp" {
        return Ok(FunctionSpec::exp());
    }
    let Some(list) = text.strip_prefix("poly:") else {
        return Err(CliError::Usage(format!("unknown function '{text}', expected exp or poly:COEFFS")));
    };
    let mut coeffs = Vec::new();
    for (k, c) in list.split(',').enumerate() {
        let e = parse_expr(c).map_err(|source| CliError::Parse { which: format!("coefficient {k}"), source })?;
        if !e.is_constant() {
            return Err(CliError::Usage(format!("coefficient {k} is not a number")));
        }
        coeffs.push(e.eval(0.0));
    }
    Ok(FunctionSpec::polynomial(&coeffs))
}

fn bound_row(dim: usize, rep: &BoundReport) -> (f64, bool) {
    let v = rep.history.iter().find(|h| h.0 == dim).map(|h| h.1).unwrap_or(f64::NAN);
    (v, rep.bound - v >= -crate::funcalc::tol_slack(rep.bound))
}

pub fn cmd_bounds(args: &BoundsArgs, out: &mut impl Write) -> Result<i32, CliError> {
    let phi = parse_fourier(&args.phi).map_err(|source| CliError::Parse { which: "--phi".into(), source })?;
    let f = parse_function(&args.func)?;
    if !(args.p >= 1.0) {
        return Err(CliError::Usage("--p must be at least 1".into()));
    }
    let dims = Schedule::up_to(args.nmax.max(1)).dims;
    let reps = calculus_discrepancy(&phi, &f, args.p, &dims)?;
    let exp = match args.t {
        Some(t) => Some(exp_unitary_estimate(&phi, t, args.p, &ExpEstimateOptions { dims: dims.clone(), ..Default::default() })?),
        None => None,
    };
    let (r2p, rp) = (&reps.schatten_2p, &reps.schatten_p);
    let mut constant_names: Vec<String> = r2p.constants.keys().cloned().collect();
    for k in rp.constants.keys() {
        if !constant_names.contains(k) {
            constant_names.push(k.clone());
        }
    }
    let mut header: Vec<String> =
        ["dim", "measured_2p", "bound_2p", "measured_p", "bound_p", "pass"].iter().map(|s| s.to_string()).collect();
    if exp.is_some() {
        header.extend(["measured_exp", "bound_exp"].map(String::from));
    }
    header.extend(constant_names.iter().cloned());
    let mut rows = Vec::new();
    let mut all_pass = r2p.pass && rp.pass;
    for &d in &dims {
        let (m2p, ok2p) = bound_row(d, r2p);
        let (mp, okp) = bound_row(d, rp);
        let mut ok = ok2p && okp;
        let mut row = vec![d.to_string(), format!("{m2p:.12e}"), format!("{:.12e}", r2p.bound), format!("{mp:.12e}"), format!("{:.12e}", rp.bound)];
        let mut extra = Vec::new();
        if let Some(e) = &exp {
            let (me, oke) = bound_row(d, e);
            ok &= oke;
            extra = vec![format!("{me:.12e}"), format!("{:.12e}", e.bound)];
        }
        row.push(ok.to_string());
        row.extend(extra);
        for k in &constant_names {
            let v = r2p.constants.get(k).or_else(|| rp.constants.get(k)).copied().unwrap_or(f64::NAN);
            row.push(format!("{v:.12e}"));
        }
        all_pass &= ok;
        rows.push(row);
    }
    if let Some(e) = &exp {
        all_pass &= e.pass;
    }
    writeln!(out, "phi = {}   f = {}   p = {}", phi, f.name(), args.p)?;
    writeln!(out, "{}", header[..6].join("  "))?;
    for row in &rows {
        writeln!(out, "{}", row[..6].join("  "))?;
    }
    if let Some(e) = &exp {
        writeln!(out, "exp estimate: measured {:.6e} bound {:.6e} pass {}", e.measured, e.bound, e.pass)?;
        for n in &e.notes {
            writeln!(out, "  note: {n}")?;
        }
    }
    for (k, v) in r2p.constants.iter() {
        writeln!(out, "  {k} = {v:.12e}")?;
    }
    if let Some(p) = &args.csv {
        let mut w = csv::Writer::from_writer(create(p)?);
        w.write_record(&header)?;
        for row in &rows {
            w.write_record(row)?;
        }
        w.flush()?;
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_CHECK })
}

pub fn read_report(path: &Path) -> Result<RunReport, CliError> {
    let file = File::open(path).map_err(|e| CliError::Report { path: path.display().to_string(), msg: e.to_string() })?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|e| CliError::Report { path: path.display().to_string(), msg: e.to_string() })
}

pub fn cmd_report(args: &ReportArgs, out: &mut impl Write) -> Result<i32, CliError> {
    if args.from.is_empty() {
        return Err(CliError::Usage("report needs at least one --from path".into()));
    }
    let mut reports = Vec::new();
    for (i, p) in args.from.iter().enumerate() {
        let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let label = if reports.iter().any(|(l, _): &(String, RunReport)| *l == stem) { format!("{stem}#{i}") } else { stem };
        reports.push((label, read_report(p)?));
    }
    match &args.out {
        Some(p) => merge_series(&reports, create(p)?)?,
        None => merge_series(&reports, &mut *out)?,
    }
    Ok(EXIT_OK)
}
