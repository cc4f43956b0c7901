//! Command-line front end: `field eval` for asymptotic-field
//! expressions, `check` for uniform-convergence verdicts on named or
//! user-defined families, and `cases` for the study suite.
//!
//! Exit codes: 0 success, 1 failed study headlines, 2 usage/spec errors,
//! 3 mathematical domain errors, 4 I/O errors.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::expr::parse_family_expr;
use crate::field::{parse_field_expr, EvalError};
use crate::lab::{self, check_b, ConvergenceMode, LabError, Probe, UniformVerdict};
use crate::lab::FunctionFamily;
use crate::studies::{self, StudyReport};
use crate::{families, scalar};

const EXIT_FAILED_HEADLINES: u8 = 1;
const EXIT_SPEC: u8 = 2;
const EXIT_MATH: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hyperlab",
    about = "Infinitesimal arithmetic and uniform-convergence diagnostics",
    long_about = None,
    after_help = "\
FIELD EXPRESSION GRAMMAR (field eval):
  rationals as integer quotients (3/4), the infinitesimal generator `e`,
  + - * / ^ with integer powers (fractional powers on bare `e`),
  parentheses, and an O(e^q) truncation marker, e.g.
      hyperlab field eval '1/(1-e) + O(e^3)'

FAMILY EXPRESSION GRAMMAR (check --term / --series-term / --limit):
  arithmetic, powers, sin, cos, arctan, exp, log, abs, sqrt, the
  constant pi, and the free symbols `n` (index) and `x`, e.g.
      hyperlab check --series-term 'sin((n+1)*x)/(n+1)' --domain 0 3.14

PROBES (check --probes):
  semicolon-separated list of
      standard:X          a fixed point
      offset:X0,C,P       x = X0 + C*n^-P, tied to the remainder index
      offset:X0,C,P,untied   the probe index grows independently"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Asymptotic-field operations
    Field {
        #[command(subcommand)]
        command: FieldCommand,
    },
    /// Classify convergence of a family (uniform / pointwise-only / not pointwise)
    Check(CheckArgs),
    /// Run the case-study suite and report pass/fail
    Cases(CasesArgs),
}

#[derive(Subcommand)]
enum FieldCommand {
    /// Evaluate a field expression and print its normal form
    Eval {
        /// Expression over rationals and the infinitesimal `e`
        expr: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args)]
struct CheckArgs {
    /// Built-in family name (see --list)
    #[arg(long, conflicts_with_all = ["term", "series_term", "partial_sum"])]
    family: Option<String>,

    /// The n-th function f_n(x) of the family, as an expression in n and x
    #[arg(long)]
    term: Option<String>,

    /// Series term u(n, x); the family is its partial sums
    #[arg(long, conflicts_with = "term")]
    series_term: Option<String>,

    /// Partial sum s_n(x) given directly (synonym of --term)
    #[arg(long, conflicts_with_all = ["term", "series_term"])]
    partial_sum: Option<String>,

    /// Closed-form limit s(x), an expression in x only
    #[arg(long)]
    limit: Option<String>,

    /// Domain endpoints a b
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    domain: Option<Vec<f64>>,

    /// Probe overrides (see PROBES in --help)
    #[arg(long)]
    probes: Option<String>,

    /// Index schedule, comma-separated increasing naturals
    #[arg(long, value_delimiter = ',')]
    schedule: Option<Vec<u64>>,

    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Output file (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Working precision in bits for float-coefficient paths (>= 64)
    #[arg(long)]
    precision: Option<u32>,

    /// List built-in family names and exit
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct CasesArgs {
    /// Run a single study by name
    #[arg(long)]
    only: Option<String>,

    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Output directory (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Working precision in bits for float-coefficient paths (>= 64)
    #[arg(long)]
    precision: Option<u32>,
}

/// Entry point used by the binary.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Field {
            command: FieldCommand::Eval { expr },
        } => cmd_field_eval(&expr),
        Command::Check(args) => cmd_check(args),
        Command::Cases(args) => cmd_cases(args),
    }
}

fn cmd_field_eval(expr: &str) -> ExitCode {
    match parse_field_expr(expr) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(EvalError::Parse(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_SPEC)
        }
        Err(EvalError::Field(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_MATH)
        }
    }
}

fn spec_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_SPEC)
}

fn io_error(path: &Path, err: std::io::Error) -> ExitCode {
    eprintln!("error: writing {}: {err}", path.display());
    ExitCode::from(EXIT_IO)
}

fn apply_precision(bits: Option<u32>) -> Result<(), String> {
    if let Some(b) = bits {
        if b < 64 {
            return Err(format!("precision must be at least 64 bits (got {b})"));
        }
        scalar::set_default_precision(b);
    }
    Ok(())
}

fn parse_probes(spec: &str) -> Result<Vec<Probe>, String> {
    let mut probes = Vec::new();
    for part in spec.split(';').filter(|s| !s.trim().is_empty()) {
        let part = part.trim();
        let (kind, rest) = part
            .split_once(':')
            .ok_or_else(|| format!("bad probe '{part}': expected 'standard:X' or 'offset:X0,C,P'"))?;
        let nums: Vec<&str> = rest.split(',').map(str::trim).collect();
        let parse = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| format!("bad number '{s}' in probe '{part}'"))
        };
        match kind {
            "standard" => {
                if nums.len() != 1 {
                    return Err(format!("standard probe takes one value: '{part}'"));
                }
                probes.push(Probe::standard(parse(nums[0])?));
            }
            "offset" => {
                let tied = match nums.len() {
                    3 => true,
                    4 if nums[3] == "untied" => false,
                    4 if nums[3] == "tied" => true,
                    _ => return Err(format!("offset probe takes X0,C,P[,untied]: '{part}'")),
                };
                probes.push(Probe::Offset {
                    x0: parse(nums[0])?,
                    c: parse(nums[1])?,
                    p: parse(nums[2])?,
                    tied,
                });
            }
            other => return Err(format!("unknown probe kind '{other}'")),
        }
    }
    if probes.is_empty() {
        return Err("probe list is empty".into());
    }
    Ok(probes)
}

fn build_family(args: &CheckArgs) -> Result<FunctionFamily, String> {
    let mut family = if let Some(name) = &args.family {
        families::builtin(name).ok_or_else(|| {
            format!(
                "unknown family '{name}'; built-ins: {}",
                families::NAMES.join(", ")
            )
        })?
    } else if let Some(src) = args.term.as_ref().or(args.partial_sum.as_ref()) {
        let e = parse_family_expr(src).map_err(|e| e.to_string())?;
        FunctionFamily::from_partial_sums(src.clone(), (0.0, 1.0), move |n, x| e.eval(n, x))
    } else if let Some(src) = &args.series_term {
        let e = parse_family_expr(src).map_err(|e| e.to_string())?;
        FunctionFamily::from_terms(src.clone(), (0.0, 1.0), move |n, x| e.eval(n, x))
    } else {
        return Err("one of --family, --term, --series-term or --partial-sum is required".into());
    };
    if let Some(src) = &args.limit {
        let e = parse_family_expr(src).map_err(|e| e.to_string())?;
        if e.uses_n() {
            return Err("--limit must be an expression in x only".into());
        }
        family = family.with_limit(move |x| e.eval_x(x));
    }
    if let Some(d) = &args.domain {
        if d[0] > d[1] {
            return Err(format!("empty domain [{}, {}]", d[0], d[1]));
        }
        family = family.with_domain(d[0], d[1]);
    } else if args.family.is_none() {
        return Err("--domain a b is required for expression-defined families".into());
    }
    Ok(family)
}

#[derive(Serialize)]
struct CheckReport<'a> {
    schema: u32,
    family: &'a str,
    domain: [f64; 2],
    schedule: &'a [u64],
    verdict: &'a UniformVerdict,
}

fn render_check_text(family: &FunctionFamily, schedule: &[u64], v: &UniformVerdict) -> String {
    let mut out = String::new();
    let (a, b) = family.domain();
    let _ = writeln!(out, "family: {} on [{}, {}]", family.name(), a, b);
    let _ = writeln!(out, "schedule: {schedule:?}");
    let _ = writeln!(
        out,
        "verdict: {}",
        match v.mode {
            ConvergenceMode::Uniform => "Uniform",
            ConvergenceMode::PointwiseOnly => "PointwiseOnly",
            ConvergenceMode::NotPointwise => "NotPointwise",
        }
    );
    if let Some(w) = &v.witness {
        let _ = writeln!(
            out,
            "witness: {} with remainder shadow {:.7} at n = {}",
            w.probe.describe(),
            w.shadow_estimate,
            w.n_used
        );
    }
    for e in &v.evidence {
        let _ = writeln!(
            out,
            "probe {:<24} negligible: {:<5} shadow {:>12.6} {}",
            e.probe.describe(),
            e.negligible,
            e.shadow_estimate,
            if e.shadow_stable { "(stable)" } else { "(drifting)" }
        );
    }
    out
}

fn render_check_csv(v: &UniformVerdict) -> String {
    let mut out = String::from("probe,n,x,remainder\n");
    for e in &v.evidence {
        for i in 0..e.ns.len() {
            let _ = writeln!(
                out,
                "\"{}\",{},{},{}",
                e.probe.describe(),
                e.ns[i],
                e.xs[i],
                e.remainders[i]
            );
        }
    }
    out
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), ExitCode> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| io_error(path, e)),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn cmd_check(args: CheckArgs) -> ExitCode {
    if args.list {
        for n in families::NAMES {
            println!("{n}");
        }
        return ExitCode::SUCCESS;
    }
    if let Err(e) = apply_precision(args.precision) {
        return spec_error(e);
    }
    let family = match build_family(&args) {
        Ok(f) => f,
        Err(e) => return spec_error(e),
    };
    let probes = match &args.probes {
        Some(spec) => match parse_probes(spec) {
            Ok(p) => p,
            Err(e) => return spec_error(e),
        },
        None => lab::default_probes(&family),
    };
    let schedule = args.schedule.unwrap_or_else(lab::default_schedule);
    let verdict = match check_b(&family, &probes, &schedule) {
        Ok(v) => v,
        Err(e @ (LabError::ProbeOutsideDomain { .. }
        | LabError::InvalidSchedule(_)
        | LabError::InvalidParams(_))) => return spec_error(e),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_MATH);
        }
    };
    let (a, b) = family.domain();
    let content = match args.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&CheckReport {
                schema: 1,
                family: family.name(),
                domain: [a, b],
                schedule: &schedule,
                verdict: &verdict,
            })
            .expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_check_text(&family, &schedule, &verdict),
        Format::Csv => render_check_csv(&verdict),
    };
    match emit(args.out.as_deref(), &content) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}

#[derive(Serialize)]
struct Summary {
    schema: u32,
    studies: BTreeMap<String, bool>,
    all_passed: bool,
}

fn cmd_cases(args: CasesArgs) -> ExitCode {
    if let Err(e) = apply_precision(args.precision) {
        return spec_error(e);
    }
    let reports: Vec<StudyReport> = match &args.only {
        Some(name) => match studies::run_study(name) {
            Some(r) => vec![r],
            None => {
                return spec_error(format!(
                    "unknown study '{name}'; valid studies: {}",
                    studies::STUDY_NAMES.join(", ")
                ))
            }
        },
        None => studies::run_all(),
    };

    let render = |r: &StudyReport| match args.format {
        Format::Json => r.to_json(),
        Format::Text => r.to_text(),
        Format::Csv => r.to_csv(),
    };
    let ext = match args.format {
        Format::Json => "json",
        Format::Text => "txt",
        Format::Csv => "csv",
    };

    if let Some(dir) = &args.out {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return io_error(dir, e);
        }
        for r in &reports {
            let path = dir.join(format!("{}.{ext}", r.study_name));
            if let Err(code) = emit(Some(&path), &render(r)) {
                return code;
            }
        }
        let summary = Summary {
            schema: 1,
            studies: reports
                .iter()
                .map(|r| (r.study_name.clone(), r.passed()))
                .collect(),
            all_passed: reports.iter().all(|r| r.passed()),
        };
        let mut s = serde_json::to_string_pretty(&summary).expect("summary serializes");
        s.push('\n');
        let path = dir.join("summary.json");
        if let Err(code) = emit(Some(&path), &s) {
            return code;
        }
    } else {
        for r in &reports {
            print!("{}", render(r));
            if args.format == Format::Text {
                println!();
            }
        }
    }

    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        eprintln!("{status} {}", r.study_name);
    }
    if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED_HEADLINES)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probe_spec_round_trip() {
        let probes = parse_probes("standard:0.5; offset:0,1,1; offset:1,-1,0.5,untied").unwrap();
        assert_eq!(probes.len(), 3);
        assert_eq!(probes[0], Probe::standard(0.5));
        assert_eq!(
            probes[1],
            Probe::Offset {
                x0: 0.0,
                c: 1.0,
                p: 1.0,
                tied: true
            }
        );
        assert!(matches!(probes[2], Probe::Offset { tied: false, .. }));
    }

    #[test]
    fn bad_probe_specs_are_rejected() {
        assert!(parse_probes("").is_err());
        assert!(parse_probes("standard:a").is_err());
        assert!(parse_probes("offset:1,2").is_err());
        assert!(parse_probes("wedge:1").is_err());
    }

    #[test]
    fn cli_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
