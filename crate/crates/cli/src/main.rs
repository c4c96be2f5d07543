mod expr;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dshuffle::solver::{verify_main_theorem, DegreeReport, SolverConfig, SourceBound, DEFAULT_BASIS_CAP};
use dshuffle::suites::{default_trunc, run_suite, CheckReport, SuiteConfig};
use dshuffle::{AlgebraError, GroupSpec};

use crate::expr::{EvalError, Evaluator};

#[derive(Parser, Debug)]
#[command(name = "dsl", version, about = "Double shuffle Lie algebras and their stabilizers, exactly")]
struct Cli {
    /// Finite abelian group, e.g. `cyclic:3` or `product:2x2`.
    #[arg(long, global = true, default_value = "cyclic:1")]
    gamma: GroupSpec,

    /// Highest weight degree for `dims`; Lyndon degree of the exhaustive checks for `verify`.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: Option<u64>,

    /// Series truncation order D (default depends on |Γ|).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    trunc: Option<u64>,

    /// Largest source degree tried by the stabilizer solver: an integer or `auto` (n + 3).
    #[arg(long, global = true, default_value = "auto", value_parser = parse_source_bound)]
    source_bound: SourceBound,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Refuse degrees whose Y-word basis exceeds this size (exit code 3).
    #[arg(long, global = true, default_value_t = DEFAULT_BASIS_CAP)]
    basis_cap: u128,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of lib, dmr, dmr0 and the stabilizer bound, degree by degree.
    Dims,
    /// Run a named check suite; exits 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Evaluate a prefix expression, e.g. `star_additive (bracket x0 x1)`.
    Eval {
        #[arg(required = true, num_args = 1..)]
        expr: Vec<String>,
    },
    /// List the operations understood by `eval`.
    Ops,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    #[value(name = "paper-deg1")]
    Deg1,
    #[value(name = "paper-deg2")]
    Deg2,
    LieLaws,
    GroupLaws,
    Theta,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Deg1 => "paper-deg1",
            Suite::Deg2 => "paper-deg2",
            Suite::LieLaws => "lie-laws",
            Suite::GroupLaws => "group-laws",
            Suite::Theta => "theta",
            Suite::All => "all",
        }
    }
}

fn parse_source_bound(s: &str) -> Result<SourceBound, String> {
    if s == "auto" {
        return Ok(SourceBound::Auto);
    }
    match s.parse::<usize>() {
        Ok(m) if m >= 1 => Ok(SourceBound::Fixed(m)),
        _ => Err(format!("expected a positive integer or `auto`, got {s:?}")),
    }
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        let code = match e {
            AlgebraError::Resource(_) => 3,
            AlgebraError::Parse(_)
            | AlgebraError::InvalidGroup(_)
            | AlgebraError::InvalidDegree(_)
            | AlgebraError::InvalidMorphism(_)
            | AlgebraError::GroupMismatch(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Parse(_) => Failure { code: 2, message: e.to_string() },
            EvalError::Algebra(a) => a.into(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("dsl: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn solver_config(cli: &Cli) -> SolverConfig {
    SolverConfig { source_bound: cli.source_bound, basis_cap: cli.basis_cap }
}

fn trunc(cli: &Cli) -> usize {
    cli.trunc.map_or_else(|| default_trunc(&cli.gamma), |d| d as usize)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Dims => {
            let n = cli.max_degree.unwrap_or(4) as usize;
            let reports = dims_parallel(&cli.gamma, n, &solver_config(cli))?;
            write_dims(&mut out, cli.format, &reports)?;
            Ok(0)
        }
        Command::Verify { suite } => {
            let mut cfg = SuiteConfig::new(cli.gamma.clone());
            cfg.trunc = trunc(cli);
            cfg.seed = cli.seed;
            cfg.solver = solver_config(cli);
            if let Some(n) = cli.max_degree {
                cfg.lyndon_degree = n as usize;
            }
            let reports = run_suite(suite.name(), &cfg)?;
            write_checks(&mut out, cli.format, &reports)?;
            Ok(if reports.iter().all(|r| r.passed) { 0 } else { 1 })
        }
        Command::Eval { expr } => {
            let g = &cli.gamma;
            let value = Evaluator { g, trunc: trunc(cli) }.eval_str(&expr.join(" "))?;
            match cli.format {
                Format::Text => writeln!(out, "{}", value.to_text(g)).map_err(io)?,
                Format::Json => writeln!(out, "{}", value.to_json(g)).map_err(io)?,
                Format::Csv => {
                    let rows = value.rows(g).ok_or_else(|| Failure {
                        code: 2,
                        message: "csv output needs a polynomial or series value".into(),
                    })?;
                    let mut w = csv::Writer::from_writer(out);
                    w.write_record(["monomial", "coeff"]).map_err(csv_err)?;
                    for (m, c) in rows {
                        w.write_record([m, c]).map_err(csv_err)?;
                    }
                    w.flush().map_err(io)?;
                }
            }
            Ok(0)
        }
        Command::Ops => {
            for (name, arity, doc) in expr::OPS {
                writeln!(out, "{name:<14} {arity}  {doc}").map_err(io)?;
            }
            Ok(0)
        }
    }
}

/// One thread per degree; results come back in degree order.
fn dims_parallel(g: &GroupSpec, n: usize, cfg: &SolverConfig) -> Result<Vec<DegreeReport>, AlgebraError> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=n).map(|d| s.spawn(move || verify_main_theorem(d, g, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("solver thread panicked")).collect()
    })
}

fn io(e: std::io::Error) -> Failure {
    Failure { code: 1, message: format!("write failed: {e}") }
}

fn json_err(e: serde_json::Error) -> Failure {
    Failure { code: 1, message: format!("serialization failed: {e}") }
}

fn csv_err(e: csv::Error) -> Failure {
    Failure { code: 1, message: format!("write failed: {e}") }
}

fn write_dims(out: &mut impl Write, format: Format, reports: &[DegreeReport]) -> Result<(), Failure> {
    match format {
        Format::Json => {
            let s = serde_json::to_string(reports).map_err(json_err)?;
            writeln!(out, "{s}").map_err(io)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in reports {
                w.serialize(r).map_err(csv_err)?;
            }
            w.flush().map_err(io)?;
        }
        Format::Text => {
            writeln!(out, "{:<12} {:>3} {:>8} {:>8} {:>8} {:>8} {:>3}  certified", "gamma", "n", "lib", "dmr", "dmr0", "stab", "M")
                .map_err(io)?;
            for r in reports {
                writeln!(
                    out,
                    "{:<12} {:>3} {:>8} {:>8} {:>8} {:>8} {:>3}  {}",
                    r.gamma.to_string(),
                    r.degree,
                    r.dim_lib,
                    r.dim_dmr,
                    r.dim_dmr0,
                    r.dim_stab_upper,
                    r.source_bound_used,
                    if r.certified { "yes" } else { "no" }
                )
                .map_err(io)?;
            }
        }
    }
    Ok(())
}

fn write_checks(out: &mut impl Write, format: Format, reports: &[CheckReport]) -> Result<(), Failure> {
    match format {
        Format::Json => {
            let s = serde_json::to_string(reports).map_err(json_err)?;
            writeln!(out, "{s}").map_err(io)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["check", "passed", "source", "expected", "got"]).map_err(csv_err)?;
            for r in reports {
                let (s, e, g) = match &r.first_failure {
                    Some(f) => (f.source.as_str(), f.expected.as_str(), f.got.as_str()),
                    None => ("", "", ""),
                };
                w.write_record([r.check.as_str(), if r.passed { "true" } else { "false" }, s, e, g])
                    .map_err(csv_err)?;
            }
            w.flush().map_err(io)?;
        }
        Format::Text => {
            for r in reports {
                writeln!(out, "{} {}", if r.passed { "PASS" } else { "FAIL" }, r.check).map_err(io)?;
                if let Some(f) = &r.first_failure {
                    writeln!(out, "    at:       {}", f.source).map_err(io)?;
                    writeln!(out, "    expected: {}", f.expected).map_err(io)?;
                    writeln!(out, "    got:      {}", f.got).map_err(io)?;
                }
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            writeln!(out, "{} checks, {} failed", reports.len(), failed).map_err(io)?;
        }
    }
    Ok(())
}
