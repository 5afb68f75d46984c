//! Command-line front end: evaluation, formulas, reductions and
//! verification suites with text, JSON or CSV output.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use zeta_tails::numerics::{brute_tail_product_sum, mzv, zeta, EvalReport};
use zeta_tails::symbolic::{duality, reduce_double_odd, reduce_n1, IntegerIndex};
use zeta_tails::tails::{evaluate_formula, formula_for_arity, tail_product_formula, TailFormula};
use zeta_tails::verify::{run_suite, CheckRecord, Suite, DEFAULT_SEED};
use zeta_tails::{Error, ExponentList, MzvIndex};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_PRECISION: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_IO: u8 = 74;

#[derive(Debug, Parser)]
#[command(name = "zeta-tails", version, about = "Sums of products of zeta tails and multiple zeta values")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Target absolute accuracy.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = parse_eps)]
    eps: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Riemann zeta at each real argument.
    Zeta {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        args: Vec<f64>,
    },
    /// Multiple zeta value with real arguments.
    Mzv {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        args: Vec<f64>,
    },
    /// Sum over n of the product of tails, from the closed formula.
    TailSum {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        exponents: Vec<f64>,
        /// Also evaluate by direct summation and report the difference.
        #[arg(long)]
        brute: bool,
    },
    /// Closed formula for a product of tails; exponents may be symbols.
    Formula {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        exponents: Vec<String>,
    },
    /// Double zeta value as a polynomial in single zeta values.
    Reduce {
        #[arg(long, value_delimiter = ',', required = true)]
        args: Vec<u32>,
    },
    /// Dual of an admissible integer index.
    Dual {
        #[arg(long, value_delimiter = ',', required = true)]
        args: Vec<u32>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "paper", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_eps(s: &str) -> Result<f64, String> {
    let eps: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if eps > 0.0 && eps.is_finite() {
        Ok(eps)
    } else {
        Err(format!("eps must be positive and finite, got {s}"))
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// One evaluated quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueRow {
    pub label: String,
    pub value: f64,
    pub abs_error_bound: f64,
    pub terms_used: usize,
}

impl ValueRow {
    fn new(label: impl Into<String>, r: EvalReport) -> Self {
        ValueRow { label: label.into(), value: r.value, abs_error_bound: r.abs_error_bound, terms_used: r.terms_used }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualJson {
    pub index: Vec<u32>,
    pub dual: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub eps: f64,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

enum Failure {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(io::Error::other(e))
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Precision(_) => EXIT_PRECISION,
                Error::Parse(_) => EXIT_USAGE,
                _ => EXIT_DOMAIN,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_IO
        }
    }
}

fn execute(cli: &Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let eps = cli.eps;
    match &cli.command {
        Command::Zeta { args } => {
            let rows = args
                .iter()
                .map(|&s| Ok(ValueRow::new(format!("ζ({s})"), zeta(s, eps)?)))
                .collect::<Result<Vec<_>, Error>>()?;
            write_values(out, cli.format, &rows)?;
        }
        Command::Mzv { args } => {
            let index = MzvIndex::new(args.clone())?;
            let rows = vec![ValueRow::new(format!("ζ({})", join(args)), mzv(&index, eps)?)];
            write_values(out, cli.format, &rows)?;
        }
        Command::TailSum { exponents, brute } => {
            let list = ExponentList::new(exponents.clone())?;
            let formula = tail_product_formula(&list)?;
            let value = evaluate_formula(&formula, &list, eps)?;
            let mut rows = vec![ValueRow::new("formula", value)];
            if *brute {
                let oracle = brute_tail_product_sum(&list, eps)?;
                rows.push(ValueRow::new("brute", oracle));
                rows.push(ValueRow {
                    label: "difference".into(),
                    value: (value.value - oracle.value).abs(),
                    abs_error_bound: value.abs_error_bound + oracle.abs_error_bound,
                    terms_used: 0,
                });
            }
            write_values(out, cli.format, &rows)?;
        }
        Command::Formula { exponents } => write_formula(out, cli.format, exponents)?,
        Command::Reduce { args } => {
            let poly = match args.as_slice() {
                [n, 1] => reduce_n1(*n)?,
                [m, n] => reduce_double_odd(*m, *n)?,
                _ => return Err(Error::Domain(format!("reduce needs two arguments, got {}", args.len())).into()),
            };
            match cli.format {
                Format::Text => writeln!(out, "ζ({}) = {poly}", join(args))?,
                Format::Json => writeln!(out, "{}", poly.to_json())?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["coeff", "monomial"])?;
                    for (monomial, coeff) in poly.terms() {
                        w.write_record([coeff.to_string(), join(monomial)])?;
                    }
                    w.flush()?;
                }
            }
        }
        Command::Dual { args } => {
            let index = IntegerIndex::new(args.clone())?;
            let dual = duality(&index)?;
            match cli.format {
                Format::Text => writeln!(out, "{}", join(dual.args()))?,
                Format::Json => {
                    let j = DualJson { index: args.clone(), dual: dual.args().to_vec() };
                    writeln!(out, "{}", serde_json::to_string(&j).expect("serializable"))?;
                }
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.write_record(["index", "dual"])?;
                    w.write_record([join(args), join(dual.args())])?;
                    w.flush()?;
                }
            }
        }
        Command::Verify { suite, seed } => {
            let checks = run_suite(*suite, *seed, eps);
            let passed = checks.iter().all(|c| c.pass);
            let report = VerifyReport { suite: *suite, seed: *seed, eps, passed, checks };
            write_report(out, cli.format, &report)?;
            return Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED });
        }
    }
    Ok(EXIT_OK)
}

fn join<T: ToString>(values: &[T]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn write_values(out: &mut impl Write, format: Format, rows: &[ValueRow]) -> Result<(), Failure> {
    match format {
        Format::Text => {
            for r in rows {
                writeln!(out, "{} = {:.15} ± {:.1e} ({} terms)", r.label, r.value, r.abs_error_bound, r.terms_used)?;
            }
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string(rows).expect("serializable"))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn write_formula(out: &mut impl Write, format: Format, exponents: &[String]) -> Result<(), Failure> {
    let numeric: Option<Vec<f64>> = exponents.iter().map(|e| e.trim().parse().ok()).collect();
    let formula: TailFormula = match &numeric {
        Some(values) => tail_product_formula(&ExponentList::new(values.clone())?)?,
        None => {
            if let Some(bad) = exponents.iter().find(|e| !is_symbol(e)) {
                return Err(Error::Parse(format!("'{bad}' is neither a number nor a symbol name")).into());
            }
            formula_for_arity(exponents.len())?
        }
    };
    let names: Vec<String> = exponents.iter().map(|e| e.trim().to_string()).collect();
    match format {
        Format::Text => match &numeric {
            Some(values) => {
                let mut parts = Vec::new();
                for (args, coeff) in formula.instantiate(values) {
                    let c = if coeff == zeta_tails::Rational::one() { String::new() } else { format!("{coeff} ") };
                    parts.push(format!("{c}ζ({})", join(&args)));
                }
                let product: String = values.iter().map(|v| format!("ζ({v})")).collect();
                writeln!(out, "{} - {product}", parts.join(" + "))?;
            }
            None => writeln!(out, "{}", formula.render(&names))?,
        },
        Format::Json => writeln!(out, "{}", formula.to_json())?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["coeff", "blocks", "offset_last", "term"])?;
            for t in &formula.zeta_terms {
                let blocks = serde_json::to_string(&t.blocks).expect("serializable");
                w.write_record([t.coeff.to_string(), blocks, t.offset_last.to_string(), t.render_zeta(&names)])?;
            }
            let product: String = names.iter().map(|n| format!("ζ({n})")).collect();
            w.write_record([formula.product_coeff.to_string(), String::new(), "false".into(), product])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn is_symbol(s: &str) -> bool {
    let s = s.trim();
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic()) && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn write_report(out: &mut impl Write, format: Format, report: &VerifyReport) -> Result<(), Failure> {
    match format {
        Format::Text => {
            let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
            writeln!(out, "{:<width$}  {:>22}  {:>22}  {:>9}  {:>9}  result", "name", "lhs", "rhs", "|diff|", "bound")?;
            for c in &report.checks {
                let result = if c.pass { "pass" } else { "FAIL" };
                write!(
                    out,
                    "{:<width$}  {:>22.15e}  {:>22.15e}  {:>9.2e}  {:>9.2e}  {result}",
                    c.name, c.lhs, c.rhs, c.diff, c.bound
                )?;
                match &c.error {
                    Some(e) => writeln!(out, " ({e})")?,
                    None => writeln!(out)?,
                }
            }
            let failed = report.checks.iter().filter(|c| !c.pass).count();
            writeln!(out, "suite {}: {} checks, {} failed", report.suite, report.checks.len(), failed)?;
        }
        Format::Json => writeln!(out, "{}", serde_json::to_string(report).expect("serializable"))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["name", "lhs", "rhs", "diff", "bound", "pass", "error"])?;
            for c in &report.checks {
                w.write_record([
                    c.name.clone(),
                    c.lhs.to_string(),
                    c.rhs.to_string(),
                    c.diff.to_string(),
                    c.bound.to_string(),
                    c.pass.to_string(),
                    c.error.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
