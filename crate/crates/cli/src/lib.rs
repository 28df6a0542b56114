//! Command-line surface for the qwk library: verification suites with JSON
//! reports and computation commands.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
//! and configuration errors.

pub mod compute;
pub mod config;
pub mod error;
pub mod report;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qwk::highest_weight::VermaVariant;
use qwk::{Scalar, Weight};

use crate::compute::StarKind;
use crate::config::{parse_list, NilpotentSpec, SuiteConfig};
use crate::error::CliError;
use crate::suites::{run_suite, Suite};

#[derive(Debug, Parser)]
#[command(name = "qwk", version, about = "Exact computations for the queer Lie superalgebra q(n)")]
pub struct Cli {
    /// `key = value` configuration file; flags override its values.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and write its JSON report.
    Check(CheckArgs),
    /// Compute an artifact.
    #[command(subcommand)]
    Compute(ComputeCommand),
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// structure | forms | pbw | clifford | verma | whittaker | good-grading |
    /// dw-lemmas | w-dims | theta | star
    pub suite: String,
    #[command(flatten)]
    pub overrides: Overrides,
}

/// Flags mirroring the configuration keys.
#[derive(Debug, Default, Args)]
pub struct Overrides {
    #[arg(long)]
    pub n: Option<usize>,
    /// Nilpotent: `principal`, `minimal`, or an odd combination like `f(1,2)`.
    #[arg(long = "E", alias = "nilpotent")]
    pub nilpotent: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub zeta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long)]
    pub depth: Option<i64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Record per-check wall times in the report.
    #[arg(long)]
    pub timings: bool,
}

impl Overrides {
    fn apply(&self, cfg: &mut SuiteConfig) -> Result<(), CliError> {
        let pairs = [
            ("n", self.n.map(|v| v.to_string())),
            ("E", self.nilpotent.clone()),
            ("zeta", self.zeta.clone()),
            ("lambda", self.lambda.clone()),
            ("cap", self.cap.map(|v| v.to_string())),
            ("depth", self.depth.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
            ("samples", self.samples.map(|v| v.to_string())),
            ("theta", self.theta.clone()),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                cfg.set(k, &v)?;
            }
        }
        if let Some(p) = &self.output {
            cfg.output = Some(p.clone());
        }
        cfg.timings |= self.timings;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    Verma,
    N,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StarKindArg {
    Moyal,
    Gutt,
}

#[derive(Debug, Subcommand)]
pub enum ComputeCommand {
    /// Weight multiplicities of a truncated Verma module (CSV).
    Character {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        depth: i64,
        /// Rank check for the weight length.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "verma")]
        variant: VariantArg,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Whittaker vectors of a Verma truncation in a depth window (JSON).
    Whittaker {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// ζ on the simple root vectors; defaults to all ones.
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        /// Depth window `a:b`.
        #[arg(long)]
        window: String,
        /// Truncation depth; defaults to the window's upper end.
        #[arg(long)]
        depth: Option<i64>,
        /// Constrain every depth in the window, including its upper end.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Invariant basis of a truncated W-algebra (JSON).
    WalgebraBasis {
        #[arg(long)]
        n: usize,
        #[arg(long = "E", alias = "nilpotent")]
        nilpotent: String,
        #[arg(long)]
        cap: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Star product of two polynomials (JSON).
    Star {
        #[arg(long, value_enum)]
        kind: StarKindArg,
        #[arg(long)]
        n: usize,
        #[arg(long = "E", alias = "nilpotent", default_value = "principal")]
        nilpotent: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// ħ-order cap `k`, i.e. terms through `ħ^{2k}`.
        #[arg(long, default_value_t = 2)]
        cap: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_weight(s: &str) -> Result<Weight, CliError> {
    s.parse::<Weight>().map_err(|e| CliError::Config(format!("lambda: {e}")))
}

fn parse_window(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Config(format!("window: expected a:b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("output serializes") + "\n"
}

fn run_check(args: &CheckArgs, config: Option<&PathBuf>) -> Result<i32, CliError> {
    let suite: Suite = args.suite.parse()?;
    let mut cfg = match config {
        Some(p) => SuiteConfig::from_file(p)?,
        None => SuiteConfig::default(),
    };
    args.overrides.apply(&mut cfg)?;
    let report = run_suite(suite, &cfg)?;
    let json = report.to_json();
    match &cfg.output {
        Some(p) => {
            std::fs::write(p, &json)?;
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                println!("{suite}: pass ({} checks)", report.checks.len());
            } else {
                println!("{suite}: FAIL ({})", failed.join(", "));
            }
        }
        None => emit(&json, None)?,
    }
    Ok(report.exit_code())
}

fn run_compute(cmd: &ComputeCommand) -> Result<i32, CliError> {
    match cmd {
        ComputeCommand::Character { lambda, depth, n, variant, output } => {
            let variant = match variant {
                VariantArg::Verma => VermaVariant::Verma,
                VariantArg::N => VermaVariant::N,
            };
            emit(&compute::character(&parse_weight(lambda)?, *n, *depth, variant)?, output.as_ref())?;
        }
        ComputeCommand::Whittaker { lambda, zeta, window, depth, strict, output } => {
            let zeta: Vec<Scalar> = match zeta {
                Some(z) => parse_list("zeta", z)?,
                None => Vec::new(),
            };
            let out = compute::whittaker(&parse_weight(lambda)?, &zeta, parse_window(window)?, *depth, *strict)?;
            emit(&to_json(&out), output.as_ref())?;
        }
        ComputeCommand::WalgebraBasis { n, nilpotent, cap, output } => {
            let out = compute::walgebra_basis(*n, &NilpotentSpec::parse(nilpotent), *cap)?;
            emit(&to_json(&out), output.as_ref())?;
        }
        ComputeCommand::Star { kind, n, nilpotent, p, q, cap, output } => {
            let kind = match kind {
                StarKindArg::Moyal => StarKind::Moyal,
                StarKindArg::Gutt => StarKind::Gutt,
            };
            let out = compute::star(kind, *n, &NilpotentSpec::parse(nilpotent), p, q, *cap)?;
            emit(&to_json(&out), output.as_ref())?;
        }
    }
    Ok(0)
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = match &cli.command {
        Command::Check(a) => run_check(a, cli.config.as_ref()),
        Command::Compute(c) => run_compute(c),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qwk: {e}");
            e.exit_code()
        }
    }
}
