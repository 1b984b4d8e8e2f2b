//! Command-line front end. [`run`] parses arguments, writes JSON (or CSV)
//! to `out` and diagnostics to `err`, and returns the exit status:
//! 0 on success, 1 on a usage or input error, 2 when an assertion fails.

mod suites;

use std::io::Write;
use std::path::Path;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use crate::bellpart::{
    iterated_family, partial_bell, partial_r_bell, v_poly, v_poly_umbral, BellpartError,
    ConvolutionExample, IteratedExample, RBellSpec, Seq,
};
use crate::combinat::{triangle, TableKind};
use crate::exactmath::{parse_rational, Poly, Rational};
use crate::graphs::{chromatic_poly_bounded, disjoint_union, sigma_poly_bounded, Graph, GraphError, DEFAULT_MAX_VERTICES};
use crate::rzcert::certify_rz;
use crate::umbra::{bell_poly, lah_poly, r_bell_poly, UmbralResult};

pub use suites::{find_suite, list_suites, run_suite, Instance, SuiteInfo, SuiteReport};

/// Overrides the deletion-contraction vertex bound.
pub const MAX_VERTICES_ENV: &str = "UMBRAL_RZ_MAX_VERTICES";

#[derive(Debug, Parser)]
#[command(name = "umbral", version, about = "Exact Bell-umbra polynomial families and real-rootedness certificates")]
struct Cli {
    /// Print coefficient rows as CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bell polynomial B_n(x).
    Bell { n: usize },
    /// r-Bell polynomial B_{n,r}(x).
    Rbell { n: usize, r: usize },
    /// Lah polynomial L_n(x).
    Lah { n: usize },
    /// Apply the chain of falling-factorial operators to a polynomial.
    UmbraApply {
        #[arg(long)]
        poly: String,
        /// Comma-separated r_1,r_2,...; empty for plain umbral evaluation.
        #[arg(long, default_value = "")]
        chain: String,
        /// Emit the source polynomial and chain along with the value.
        #[arg(long)]
        provenance: bool,
    },
    /// Certify whether all roots of a polynomial are real.
    RzCertify {
        #[arg(long)]
        poly: String,
        /// Exit with status 2 unless all roots are real.
        #[arg(long)]
        expect_rz: bool,
    },
    /// Rows 0..=ROWS of a number triangle.
    Numbers {
        /// stirling1, stirling1-signed, stirling2, lah, binomial, r-stirling1:R, assoc-stirling2:M
        #[arg(long)]
        kind: String,
        #[arg(long)]
        rows: usize,
    },
    /// Partial Bell value B_{n,k}(a), or B^{(r)}_{n+r,k+r}(a; e + L a) with --r.
    PartialBell {
        n: usize,
        k: usize,
        /// JSON array of a_1, a_2, ... or a preset: ones, factorials, shift:m
        #[arg(long)]
        seq: String,
        #[arg(long)]
        r: Option<usize>,
    },
    /// V_{n,r}(x), computed by both routes.
    Vpoly {
        n: usize,
        r: usize,
        #[arg(long)]
        seq: String,
    },
    /// A family of polynomials for n = 0..=nmax.
    Family {
        /// bell, rising (iterated) or stirling2, stirling1, lah (convolution)
        #[arg(long)]
        preset: String,
        /// Iteration depth for the iterated presets.
        #[arg(long)]
        s: Option<usize>,
        /// Power of h for the convolution presets.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
    },
    /// Sigma polynomial of a graph, optionally joined with more graphs.
    Sigma(GraphArgs),
    /// Chromatic polynomial of a graph, optionally joined with more graphs.
    Chromatic(GraphArgs),
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List the verification suites.
    Suites,
}

#[derive(Debug, clap::Args)]
struct GraphArgs {
    /// Path to a graph file, inline JSON, or a preset such as path:5.
    #[arg(long)]
    graph: String,
    /// Further graphs joined disjointly, e.g. complete:3.
    #[arg(long, num_args = 1..)]
    union: Vec<String>,
    /// Vertex bound for deletion-contraction.
    #[arg(long)]
    max_vertices: Option<usize>,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Assertion(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Assertion(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Assertion(m) => m,
        }
    }
}

impl From<BellpartError> for CliError {
    fn from(e: BellpartError) -> Self {
        match e {
            BellpartError::Inconsistent(_) => CliError::Assertion(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Inconsistent(_) => CliError::Assertion(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// What a subcommand produced, before formatting.
enum Output {
    Poly(Poly),
    Polys(Vec<Poly>),
    Table(Vec<Vec<String>>),
    Report(SuiteReport),
    Json(Value),
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    let csv = cli.csv;
    let (output, failure) = match execute(cli.command) {
        Ok(pair) => pair,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            return e.code();
        }
    };
    let text = if csv { to_csv(&output) } else { to_json(&output) };
    if writeln!(out, "{text}").is_err() {
        return 1;
    }
    match failure {
        Some(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
        None => 0,
    }
}

/// Returns the output together with an assertion failure that should set
/// the exit status after the output has been printed.
fn execute(command: Command) -> Result<(Output, Option<CliError>), CliError> {
    let done = |o: Output| Ok((o, None));
    match command {
        Command::Bell { n } => done(Output::Poly(bell_poly(n))),
        Command::Rbell { n, r } => done(Output::Poly(r_bell_poly(n, r))),
        Command::Lah { n } => done(Output::Poly(lah_poly(n))),
        Command::UmbraApply {
            poly,
            chain,
            provenance,
        } => {
            let f = read_poly(&poly)?;
            let chain = parse_chain(&chain)?;
            let result = UmbralResult::evaluate(&f, &chain);
            if provenance {
                done(Output::Json(serde_json::to_value(&result).expect("serializable")))
            } else {
                done(Output::Poly(result.value))
            }
        }
        Command::RzCertify { poly, expect_rz } => {
            let p = read_poly(&poly)?;
            let cert = certify_rz(&p).map_err(|e| CliError::Input(e.to_string()))?;
            let failure = (expect_rz && !cert.all_real)
                .then(|| CliError::Assertion(format!("{p} has non-real roots")));
            Ok((Output::Json(serde_json::to_value(&cert).expect("serializable")), failure))
        }
        Command::Numbers { kind, rows } => {
            let kind: TableKind = kind.parse().map_err(CliError::Input)?;
            let table = triangle(kind, rows + 1)
                .into_iter()
                .map(|row| row.into_iter().map(|v| v.to_string()).collect())
                .collect();
            done(Output::Table(table))
        }
        Command::PartialBell { n, k, seq, r } => {
            let a = read_seq(&seq, n + 1)?;
            let value = match r {
                None => partial_bell(n, k, &a)?,
                Some(r) => partial_r_bell(n, k, &RBellSpec::linked(a, r))?,
            };
            done(Output::Json(Value::String(value.to_string())))
        }
        Command::Vpoly { n, r, seq } => {
            let a = read_seq(&seq, n.max(1))?;
            let v = v_poly(n, r, &a)?;
            let u = v_poly_umbral(n, r, &a)?;
            let failure = (v != u).then(|| {
                CliError::Assertion(format!("partial r-Bell route gives {v}, umbral route gives {u}"))
            });
            Ok((Output::Poly(v), failure))
        }
        Command::Family {
            preset,
            s,
            r,
            nmax,
        } => done(Output::Polys(family(&preset, s, r, nmax)?)),
        Command::Sigma(args) => {
            let (g, bound) = read_graph_args(&args)?;
            done(Output::Poly(sigma_poly_bounded(&g, bound)?))
        }
        Command::Chromatic(args) => {
            let (g, bound) = read_graph_args(&args)?;
            done(Output::Poly(chromatic_poly_bounded(&g, bound)?))
        }
        Command::Verify { suite, nmax, seed } => {
            let bound = env_max_vertices()?.unwrap_or(DEFAULT_MAX_VERTICES);
            let report = run_suite(&suite, nmax, seed, bound).ok_or_else(|| {
                let names: Vec<_> = list_suites().iter().map(|s| s.name).collect();
                CliError::Input(format!("unknown suite {suite:?}; available: {}", names.join(", ")))
            })?;
            let failure = (!report.all_passed).then(|| {
                let failed = report.instances.iter().filter(|i| !i.passed).count();
                CliError::Assertion(format!("suite {} failed {failed} instance(s)", report.suite_name))
            });
            Ok((Output::Report(report), failure))
        }
        Command::Suites => {
            let rows = list_suites()
                .iter()
                .map(|s| {
                    serde_json::json!({
                        "name": s.name,
                        "description": s.description,
                        "default_nmax": s.default_nmax,
                    })
                })
                .collect();
            done(Output::Json(Value::Array(rows)))
        }
    }
}

fn family(preset: &str, s: Option<usize>, r: Option<usize>, nmax: usize) -> Result<Vec<Poly>, CliError> {
    if let Some(ex) = IteratedExample::ALL.into_iter().find(|e| e.name() == preset) {
        if r.is_some() {
            return Err(CliError::Input(format!("preset {preset} takes --s, not --r")));
        }
        return Ok(iterated_family(&ex.h(nmax.max(1)), s.unwrap_or(0), nmax)?);
    }
    if let Some(ex) = ConvolutionExample::ALL.into_iter().find(|e| e.name() == preset) {
        if s.is_some() {
            return Err(CliError::Input(format!("preset {preset} takes --r, not --s")));
        }
        return Ok(ex.family(r.unwrap_or(0), nmax)?.polys);
    }
    Err(CliError::Input(format!(
        "unknown family preset {preset:?}; expected bell, rising, stirling2, stirling1 or lah"
    )))
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
fn read_text(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Input(format!("cannot read {arg:?}: {e}")))
}

fn read_poly(arg: &str) -> Result<Poly, CliError> {
    Poly::from_json(&read_text(arg)?).map_err(|e| CliError::Input(e.to_string()))
}

fn parse_chain(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Input(format!("bad chain entry {s:?}"))))
        .collect()
}

/// Inline JSON array of values, or a preset expanded to `len` entries.
fn read_seq(arg: &str, len: usize) -> Result<Seq, CliError> {
    if !arg.trim_start().starts_with('[') {
        return Ok(Seq::preset(arg, len)?);
    }
    let value: Value = serde_json::from_str(arg).map_err(|e| CliError::Input(e.to_string()))?;
    let items = value
        .as_array()
        .ok_or_else(|| CliError::Input("sequence must be a JSON array".into()))?;
    let entries = items
        .iter()
        .map(|v| match v {
            Value::String(s) => parse_rational(s).map_err(|e| CliError::Input(e.to_string())),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().expect("i64").into())),
            other => Err(CliError::Input(format!("bad sequence entry {other}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Seq::new(entries))
}

fn read_graph(arg: &str) -> Result<Graph, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') {
        return Ok(Graph::from_json(arg)?);
    }
    if !Path::new(arg).exists() && arg.contains(':') {
        return Ok(Graph::from_preset(arg)?);
    }
    Ok(Graph::from_json(&read_text(arg)?)?)
}

fn env_max_vertices() -> Result<Option<usize>, CliError> {
    match std::env::var(MAX_VERTICES_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("{MAX_VERTICES_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn read_graph_args(args: &GraphArgs) -> Result<(Graph, usize), CliError> {
    let mut g = read_graph(&args.graph)?;
    for extra in &args.union {
        g = disjoint_union(&g, &read_graph(extra)?);
    }
    let bound = match args.max_vertices {
        Some(b) => b,
        None => env_max_vertices()?.unwrap_or(DEFAULT_MAX_VERTICES),
    };
    Ok((g, bound))
}

fn json_string<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

fn to_json(output: &Output) -> String {
    match output {
        Output::Poly(p) => json_string(p),
        Output::Polys(ps) => json_string(ps),
        Output::Table(rows) => json_string(rows),
        Output::Report(r) => serde_json::to_string_pretty(r).expect("serializable"),
        Output::Json(v) => json_string(v),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Polynomials and tables become one coefficient row per line; other
/// outputs stay JSON.
fn to_csv(output: &Output) -> String {
    let row = |cells: Vec<String>| cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(",");
    match output {
        Output::Poly(p) => row(p.to_strings()),
        Output::Polys(ps) => ps
            .iter()
            .enumerate()
            .map(|(n, p)| {
                let mut cells = vec![n.to_string()];
                cells.extend(p.to_strings());
                row(cells)
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Output::Table(rows) => rows.iter().map(|r| row(r.clone())).collect::<Vec<_>>().join("\n"),
        Output::Report(r) => {
            let mut lines = vec!["params,passed,witness".to_string()];
            lines.extend(r.instances.iter().map(|i| {
                row(vec![i.params.to_string(), i.passed.to_string(), i.witness.clone()])
            }));
            lines.join("\n")
        }
        Output::Json(v) => json_string(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("umbral").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bell_output() {
        let (code, out, _) = call(&["bell", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"["0","1","3","1"]"#);
        let (_, out, _) = call(&["--csv", "bell", "3"]);
        assert_eq!(out.trim(), "0,1,3,1");
    }

    #[test]
    fn rz_certify_exit_codes() {
        let (code, out, _) = call(&["rz-certify", "--poly", r#"["0","1","1"]"#, "--expect-rz"]);
        assert_eq!(code, 0);
        assert!(out.contains(r#""all_real":true"#));
        let (code, _, _) = call(&["rz-certify", "--poly", r#"["1","0","1"]"#, "--expect-rz"]);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["rz-certify", "--poly", r#"["1","0","1"]"#]);
        assert_eq!(code, 0);
        let (code, _, err) = call(&["rz-certify", "--poly", r#"["1","x"]"#]);
        assert_eq!(code, 1);
        assert!(!err.is_empty());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["bell"]).0, 1);
        assert_eq!(call(&["frobnicate"]).0, 1);
        assert_eq!(call(&["verify", "--suite", "nope"]).0, 1);
        assert_eq!(call(&["numbers", "--kind", "eulerian", "--rows", "3"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn chain_and_sequences() {
        assert_eq!(parse_chain("1, 2,3").unwrap(), vec![1, 2, 3]);
        assert!(parse_chain("").unwrap().is_empty());
        assert!(parse_chain("1,x").is_err());
        let s = read_seq(r#"["1/2", 3]"#, 0).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(read_seq("shift:1", 3).unwrap().len(), 3);
        assert!(read_seq("primes", 3).is_err());
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("plain"), "plain");
    }
}
