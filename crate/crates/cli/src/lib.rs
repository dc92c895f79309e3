//! Command-line front end.
//!
//! Exit codes: 0 when the command completed with nothing negative to report,
//! 1 when the analysis found the queried negative (a refutation, a
//! counterexample, a reproduction mismatch), 2 for usage, parse and guard
//! errors.

use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use q2scaling::refute::{hunt_with, verify_refutation_with, AnalysisOptions, GeneratorMode, HypothesisStatus};
use q2scaling::{classes, io as matrix_io, reproduce, Guards, HuntConfig, RationalMatrix, SamplingConfig};
use serde::Serialize;

pub mod render;

/// Version of the structured output layout.
pub const FORMAT_VERSION: u32 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "q2scaling", version, about = "Exact P/P0/P0+/Q classification and (DA)^2 scaling analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Largest dimension for which all minors are enumerated.
    #[arg(long, default_value_t = 12, global = true)]
    pub max_dim: usize,

    /// Largest dimension for symbolic expansion in the scaling variables.
    #[arg(long, default_value_t = 6, global = true)]
    pub max_symbolic_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a matrix in the P / P0 / P0+ / Q hierarchy and test anti-sign symmetry.
    Analyze(MatrixInput),
    /// Decide whether (DA)^2 is Q for every positive diagonal D.
    #[command(name = "q2scaling", visible_alias = "scaling")]
    Q2Scaling {
        #[command(flatten)]
        input: MatrixInput,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Recompute and self-check the 2x2 counterexample [[1, 2], [-1, 5]].
    Reproduce,
    /// Search random integer matrices for violations of the implication.
    Hunt(HuntArgs),
}

#[derive(Debug, Args)]
pub struct MatrixInput {
    /// Matrix file in text or document form; `-` reads standard input.
    pub path: Option<PathBuf>,
    /// Inline matrix, rows separated by `;`, e.g. "1 2; -1 5".
    #[arg(long, conflicts_with = "path", allow_hyphen_values = true)]
    pub matrix: Option<String>,
}

#[derive(Debug, Args)]
pub struct SamplingArgs {
    /// Number of sampled scalings when no certificate settles the question.
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Seed for the scaling sampler.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct HuntArgs {
    /// Matrix dimension.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Entries are drawn from [-range, range].
    #[arg(long, default_value_t = 5)]
    pub range: i64,
    /// Number of candidates.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    /// Sampling budget per candidate.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Seed for candidate generation and per-candidate sampling.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Candidate generator.
    #[arg(long, value_enum, default_value_t = Mode::Uniform)]
    pub mode: Mode,
    /// Skip singular candidates.
    #[arg(long)]
    pub reject_singular: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Uniform,
    Spd,
}

#[derive(Debug)]
pub struct CliError(pub String);

impl From<q2scaling::Error> for CliError {
    fn from(e: q2scaling::Error) -> Self {
        CliError(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError(e.to_string())
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    format_version: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

fn structured<T: Serialize>(command: &str, body: T) -> String {
    let doc = Envelope { format_version: FORMAT_VERSION, command, body };
    let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
    s.push('\n');
    s
}

impl MatrixInput {
    fn load(&self) -> Result<RationalMatrix, CliError> {
        let src = match (&self.matrix, &self.path) {
            (Some(inline), _) => inline_to_text(inline),
            (None, Some(p)) if p.as_os_str() == "-" => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            }
            (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| CliError(format!("{}: {e}", p.display())))?,
            (None, None) => return Err(CliError("no matrix given; pass a file path or --matrix".into())),
        };
        Ok(matrix_io::parse_any(&src)?)
    }
}

/// `"1 2; -1 5"` to the text file form.
pub fn inline_to_text(inline: &str) -> String {
    let rows: Vec<&str> = inline.split(';').map(str::trim).filter(|r| !r.is_empty()).collect();
    let mut s = format!("{}\n", rows.len());
    for r in rows {
        s.push_str(r);
        s.push('\n');
    }
    s
}

impl Cli {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            guards: Guards { max_enumeration_dim: self.max_dim, max_symbolic_dim: self.max_symbolic_dim },
            ..AnalysisOptions::default()
        }
    }
}

/// Exit code plus an optional diagnostic for standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub message: Option<String>,
}

impl From<u8> for Outcome {
    fn from(code: u8) -> Self {
        Outcome { code, message: None }
    }
}

/// Runs one command, writing the report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let opts = cli.options();
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::Analyze(input) => {
            let m = input.load()?;
            let report = classes::classify_with(&m, &opts.guards)?;
            if text {
                out.write_all(render::analysis(&m, &report).as_bytes())?;
            } else {
                #[derive(Serialize)]
                struct Body<'a> {
                    matrix: matrix_io::MatrixDocument,
                    report: &'a classes::ClassReport,
                }
                out.write_all(structured("analyze", Body { matrix: (&m).into(), report: &report }).as_bytes())?;
            }
            Ok(EXIT_OK.into())
        }
        Command::Q2Scaling { input, sampling } => {
            let m = input.load()?;
            let cfg = SamplingConfig::new(sampling.budget as usize, sampling.seed);
            let report = verify_refutation_with(&m, &cfg, &opts)?;
            if text {
                out.write_all(render::scaling(&report).as_bytes())?;
            } else {
                #[derive(Serialize)]
                struct Body<'a> {
                    matrix: matrix_io::MatrixDocument,
                    invariants: &'a [q2scaling::SparsePolynomial],
                    certificates: &'a [q2scaling::Certificate],
                    hypothesis: &'a HypothesisStatus,
                }
                let body = Body {
                    matrix: (&m).into(),
                    invariants: &report.invariants,
                    certificates: &report.certificates,
                    hypothesis: &report.hypothesis,
                };
                out.write_all(structured("q2scaling", body).as_bytes())?;
            }
            Ok(match report.hypothesis {
                HypothesisStatus::RefutedAt { .. } => EXIT_NEGATIVE,
                _ => EXIT_OK,
            }
            .into())
        }
        Command::Reproduce => reproduce_with(&reproduce::Expected::counterexample(), cli.format, out),
        Command::Hunt(args) => {
            let cfg = HuntConfig {
                n: args.dim,
                range: args.range,
                count: args.count as usize,
                budget: args.budget as usize,
                seed: args.seed,
                mode: match args.mode {
                    Mode::Uniform => GeneratorMode::Uniform,
                    Mode::Spd => GeneratorMode::SymmetricPositiveDefinite,
                },
                reject_singular: args.reject_singular,
            };
            let summary = hunt_with(&cfg, &opts)?;
            if text {
                out.write_all(render::hunt(&summary).as_bytes())?;
            } else {
                out.write_all(structured("hunt", &summary).as_bytes())?;
            }
            Ok(if summary.counterexamples > 0 { EXIT_NEGATIVE } else { EXIT_OK }.into())
        }
    }
}

/// `reproduce` against an arbitrary expectation table.
pub fn reproduce_with(expected: &reproduce::Expected, format: Format, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let rep = reproduce::run(expected)?;
    match format {
        Format::Text => out.write_all(render::reproduction(&rep).as_bytes())?,
        Format::Structured => {
            #[derive(Serialize)]
            struct Body<'a> {
                passed: bool,
                first_mismatch: Option<&'a str>,
                reproduction: &'a reproduce::Reproduction,
            }
            let body = Body {
                passed: rep.passed(),
                first_mismatch: rep.first_mismatch().map(|c| c.name.as_str()),
                reproduction: &rep,
            };
            out.write_all(structured("reproduce", body).as_bytes())?;
        }
    }
    Ok(match rep.first_mismatch() {
        None => EXIT_OK.into(),
        Some(c) => Outcome {
            code: EXIT_NEGATIVE,
            message: Some(format!("reproduction mismatch in `{}`: expected {}, got {}", c.name, c.expected, c.actual)),
        },
    })
}
