//! Command-line front end: argument parsing, dispatch and canonical reports.

pub mod commands;
pub mod render;

use std::fs;
use std::path::PathBuf;

use chebcurve::chebyshev::Sign;
use chebcurve::groebner::PairStrategy;
use chebcurve::poly::parse;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use commands::{CurveInput, Timer};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
    #[error("computation failed: {0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    #[default]
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Sign {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    #[default]
    Normal,
    Fifo,
}

impl From<StrategyArg> for PairStrategy {
    fn from(s: StrategyArg) -> PairStrategy {
        match s {
            StrategyArg::Normal => PairStrategy::Normal,
            StrategyArg::Fifo => PairStrategy::Fifo,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "chebcurve", version, about = "Milnor algebras, syzygies and rationality of plane curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the random coordinate changes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// S-pair selection for Gröbner bases.
    #[arg(long, global = true, value_enum, default_value_t)]
    pub strategy: StrategyArg,
    /// Add per-phase wall-clock milliseconds under `timings`.
    #[arg(long, global = true)]
    pub timings: bool,
}

fn degree_at_least_3(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(d) if d >= 3 => Ok(d),
        _ => Err("d >= 3 required".into()),
    }
}

fn degree_3_to_10(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(d) if (3..=10).contains(&d) => Ok(d),
        _ => Err("3 <= d <= 10 required".into()),
    }
}

/// A curve from a file, or the Chebyshev curve of degree `-d`.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// File holding one polynomial in x, y, z.
    pub file: Option<PathBuf>,
    #[arg(short = 'd', value_parser = degree_at_least_3)]
    pub degree: Option<u32>,
}

#[derive(Debug, Args)]
pub struct SignOpt {
    #[arg(long, value_enum, default_value_t)]
    pub sign: SignArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Chebyshev polynomial, curve, critical values, node grids and factors.
    Gen {
        #[arg(short = 'd', value_parser = degree_at_least_3)]
        d: u32,
        #[command(flatten)]
        sign: SignOpt,
    },
    /// Hilbert data of the Milnor algebra.
    Hilbert {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sign: SignOpt,
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Per-degree dimensions of the Jacobian syzygies.
    Syzygy {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sign: SignOpt,
        #[arg(long)]
        rmax: Option<u32>,
    },
    /// Ranks of the evaluation maps on the B-grid.
    Interp {
        #[arg(short = 'd', value_parser = degree_3_to_10)]
        d: u32,
    },
    /// Reducedness, nodality and the rationality certificate.
    RationalTest {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        sign: SignOpt,
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Full verification bundle for the Chebyshev curve of degree d.
    Verify {
        #[arg(short = 'd', value_parser = degree_3_to_10)]
        d: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gen { .. } => "gen",
            Command::Hilbert { .. } => "hilbert",
            Command::Syzygy { .. } => "syzygy",
            Command::Interp { .. } => "interp",
            Command::RationalTest { .. } => "rational-test",
            Command::Verify { .. } => "verify",
        }
    }
}

pub fn read_input(input: &InputArgs, sign: SignArg) -> Result<(CurveInput, Value), CliError> {
    match (&input.file, input.degree) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            let f = parse(text.trim(), 3).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let echo = json!({ "file": path.display().to_string(), "polynomial": text.trim() });
            Ok((CurveInput::Poly(f), echo))
        }
        (None, Some(d)) => {
            let sign = Sign::from(sign);
            Ok((CurveInput::Chebyshev(d, sign), json!({ "d": d, "sign": sign.to_string() })))
        }
        (None, None) => Err(CliError::Input("a polynomial file or -d is required".into())),
    }
}

/// Finished report and whether every verification in it passed.
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let strategy = PairStrategy::from(cli.strategy);
    let mut timer = Timer::new(cli.timings);
    let mut passed = true;
    let (inputs, results) = match &cli.command {
        Command::Gen { d, sign } => {
            let sign = Sign::from(sign.sign);
            (json!({ "d": d, "sign": sign.to_string() }), commands::gen(*d, sign, &mut timer)?)
        }
        Command::Hilbert { input, sign, kmax } => {
            let (curve, mut echo) = read_input(input, sign.sign)?;
            echo["kmax"] = json!(kmax);
            (echo, commands::hilbert(&curve, *kmax, strategy, &mut timer)?)
        }
        Command::Syzygy { input, sign, rmax } => {
            let (curve, mut echo) = read_input(input, sign.sign)?;
            echo["rmax"] = json!(rmax);
            (echo, commands::syzygy(&curve, *rmax, strategy, &mut timer)?)
        }
        Command::Interp { d } => (json!({ "d": d }), commands::interp(*d, &mut timer)?),
        Command::RationalTest { input, sign, kmax } => {
            let (curve, mut echo) = read_input(input, sign.sign)?;
            echo["kmax"] = json!(kmax);
            (echo, commands::rational_test(&curve, cli.seed, strategy, *kmax, &mut timer)?)
        }
        Command::Verify { d } => {
            let (results, ok) = commands::verify(*d, strategy, &mut timer)?;
            passed = ok;
            (json!({ "d": d }), results)
        }
    };
    let mut report = json!({
        "command": cli.command.name(),
        "inputs": inputs,
        "results": results,
        "seed": cli.seed,
    });
    if let Some(t) = timer.into_value() {
        report["timings"] = t;
    }
    Ok(Outcome { report, passed })
}

pub fn format_report(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("JSON values always serialize");
            s.push('\n');
            s
        }
        Format::Text => render::text(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Failed(String::new()).exit_code(), 1);
        assert_eq!(CliError::Input(String::new()).exit_code(), 2);
        assert_eq!(CliError::Precondition(String::new()).exit_code(), 3);
    }

    #[test]
    fn parses_global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["chebcurve", "verify", "-d", "5", "--format", "text", "--strategy", "fifo"]).unwrap();
        assert_eq!(cli.format, Format::Text);
        assert_eq!(cli.strategy, StrategyArg::Fifo);
        assert!(Cli::try_parse_from(["chebcurve", "hilbert"]).is_err());
        assert!(Cli::try_parse_from(["chebcurve", "hilbert", "f.txt", "-d", "4"]).is_err());
    }
}
