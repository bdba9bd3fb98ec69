//! Command-line front end: argument parsing, dispatch and report output.
//!
//! [`run`] never prints and never exits, so it can be driven from tests; the
//! `sumset` binary forwards its [`CommandOutcome`] to the terminal.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sumset_core::search::Constraint;
use sumset_core::Error;

pub use report::{Envelope, Report, REPORT_SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    /// 0 success, 1 invariant violation found, 2 usage error.
    pub status: i32,
    /// Report text, unless it went to `--output`.
    pub stdout: String,
    pub stderr: String,
    pub output: Option<PathBuf>,
}

impl CommandOutcome {
    fn usage(message: impl Into<String>) -> CommandOutcome {
        CommandOutcome {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: message.into(),
            output: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "sumset", version, about = "Restricted sumsets in finite Abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Recompute a worked example: ex1, ex2, ex3 or noncoset_s.
    Reproduce { name: String },
    /// Build an extremal triple from parameters or a recipe file.
    Construct(ConstructArgs),
    /// Recover the structural witness of a critical triple.
    Classify(TripleArgs),
    /// Bound report for a single triple.
    Bounds(TripleArgs),
    /// Sweep groups for violations and tight triples.
    Survey(SurveyArgs),
    /// Check Kneser's identity for a pair.
    Kneser(PairArgs),
    /// L(G), 2G, K(G) and optionally the L_S table.
    Constants(ConstantsArgs),
}

/// Subsets are given as literals such as `0,5,2+<5>` or `(1,0),(3,1)`.
#[derive(Debug, Args)]
struct TripleArgs {
    /// JSON file with `group`, `a`, `b`, `s` index arrays.
    #[arg(long, conflicts_with_all = ["group", "a", "b", "s"])]
    input: Option<PathBuf>,
    #[arg(long)]
    group: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// Named subgroups for literals, e.g. `H=<5>`.
    #[arg(long = "bind")]
    bind: Vec<String>,
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(long)]
    group: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long = "bind")]
    bind: Vec<String>,
}

#[derive(Debug, Args)]
struct ConstantsArgs {
    #[arg(long)]
    group: String,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// L_S evaluator: `formula` or `brute`.
    #[arg(long, default_value = "formula")]
    method: String,
    #[arg(long = "bind")]
    bind: Vec<String>,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    /// JSON recipe file (as emitted by `classify`).
    #[arg(long, conflicts_with_all = ["group", "b", "k", "l", "reps", "sigma"])]
    input: Option<PathBuf>,
    #[arg(long)]
    group: Option<String>,
    /// Subgroup Σ ⊆ 2G to lift along (default `{0}`).
    #[arg(long)]
    sigma: Option<String>,
    /// Shift s of S = s + Σ.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    shift: String,
    #[arg(long = "b-s", default_value = "0", allow_hyphen_values = true)]
    b_s: String,
    /// Pair parameters; elements of G stand for their cosets modulo Σ.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long)]
    l: Option<usize>,
    /// Coset representatives x₁..x_m, comma separated; default: the least
    /// representative of each ± pair.
    #[arg(long, allow_hyphen_values = true)]
    reps: Option<String>,
}

#[derive(Debug, Args)]
struct SurveyArgs {
    /// Group presentation; repeatable.
    #[arg(long = "group")]
    groups: Vec<String>,
    #[arg(long)]
    max_order: Option<u32>,
    #[arg(long, default_value = "exhaustive")]
    mode: String,
    #[arg(long)]
    s_size: Option<usize>,
    /// Fix S instead of ranging over subsets (literal; needs a single group).
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "at-threshold")]
    constraint: ConstraintArg,
    /// Shorthand for `--constraint at-threshold`.
    #[arg(long, conflicts_with = "constraint")]
    at_threshold: bool,
    /// Worker threads; the report does not depend on it.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    time_budget_ms: Option<u64>,
    #[arg(long, default_value_t = sumset_core::search::DEFAULT_MAX_FINGERPRINTS)]
    max_fingerprints: usize,
    #[arg(long, default_value_t = sumset_core::search::DEFAULT_TRIPLE_CAP)]
    triple_cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConstraintArg {
    AtThreshold,
    AboveThreshold,
    All,
}

impl From<ConstraintArg> for Constraint {
    fn from(c: ConstraintArg) -> Constraint {
        match c {
            ConstraintArg::AtThreshold => Constraint::AtThreshold,
            ConstraintArg::AboveThreshold => Constraint::AboveThreshold,
            ConstraintArg::All => Constraint::All,
        }
    }
}

/// Status for a library error: violations are 1, everything else is usage.
fn status_of(e: &Error) -> i32 {
    if e.is_invariant_violation() {
        EXIT_VIOLATION
    } else {
        EXIT_USAGE
    }
}

/// Parse `argv` (including the program name) and execute the command.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::usage(text)
            } else {
                // --help and --version
                CommandOutcome {
                    status: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                    output: None,
                }
            };
        }
    };
    let (report, status) = match commands::dispatch(&cli.command) {
        Ok(done) => done,
        Err(e) => {
            return CommandOutcome {
                status: status_of(&e),
                stdout: String::new(),
                stderr: format!("error: {e}"),
                output: None,
            }
        }
    };
    let text = match cli.format {
        Format::Json => {
            let env = Envelope {
                schema_version: REPORT_SCHEMA_VERSION,
                report,
            };
            serde_json::to_string_pretty(&env).expect("reports serialize") + "\n"
        }
        Format::Table => report.table(),
    };
    match cli.output {
        Some(path) => match std::fs::write(&path, &text) {
            Ok(()) => CommandOutcome {
                status,
                stdout: String::new(),
                stderr: String::new(),
                output: Some(path),
            },
            Err(e) => CommandOutcome::usage(format!("error: cannot write {}: {e}", path.display())),
        },
        None => CommandOutcome {
            status,
            stdout: text,
            stderr: String::new(),
            output: None,
        },
    }
}
