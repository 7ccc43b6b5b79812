//! Command-line front end: model-set patches, their verification, Brooks
//! quasi-morphism analyses and Massicot–Wagner constants, each producing a
//! deterministic JSON [`RunReport`].
//!
//! Exit codes: `0` everything verified, `1` usage or IO error, `2` a
//! mathematical check failed or a hypothesis was violated.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use report::RunReport;

#[derive(Debug, Parser)]
#[command(name = "meyerkit", version, about = "Model sets, approximate-group covers and quasi-morphisms")]
pub struct Cli {
    /// Worker threads (0 = one per core). Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate a model-set patch and write it as CSV.
    Generate(GenerateArgs),
    /// Run certifiers on a model-set patch.
    Verify(VerifyArgs),
    /// Brooks quasi-morphism analyses on a free group.
    Qm(QmArgs),
    /// Massicot–Wagner constants for a K-approximate subgroup.
    Bounds(BoundsArgs),
}

#[derive(Debug, Args)]
pub struct SchemeArgs {
    /// Scheme file (JSON).
    #[arg(long)]
    pub scheme: PathBuf,

    /// Window half-widths `r1,r2,...`; one value is used on every axis.
    #[arg(long, default_value = "1")]
    pub window: String,

    /// Physical box `lo..hi[,lo..hi...]`.
    #[arg(long = "box", allow_hyphen_values = true)]
    pub bx: Option<String>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// CSV output file.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Also write exact coordinates to `<out>.exact.json`.
    #[arg(long)]
    pub exact: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Comma-separated subset of `discrete3,dense,cover,tower:N,graph`, or `all`.
    #[arg(long, default_value = "all")]
    pub checks: String,
}

#[derive(Debug, Args)]
pub struct QmArgs {
    /// Pattern word over `a..z` (capital letters are inverses).
    #[arg(long)]
    pub word: String,

    /// Rank of the free group; defaults to the largest letter used (at least 2).
    #[arg(long)]
    pub rank: Option<u32>,

    #[command(subcommand)]
    pub action: QmAction,
}

#[derive(Debug, Subcommand)]
pub enum QmAction {
    /// Largest defect over all pairs of the ball.
    Defect {
        #[arg(long, default_value_t = 5)]
        radius: usize,
        /// Scan only this many pairs.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// The quasi-kernel `f^-1([-R, R])` on the ball.
    Kernel {
        #[arg(long = "R", allow_hyphen_values = true)]
        threshold: String,
        #[arg(long, default_value_t = 5)]
        radius: usize,
        /// Write `word<TAB>value` lines here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Witness set `F` with `Λ^2 ⊆ F Λ` for the quasi-kernel.
    Cover {
        #[arg(long = "R", allow_hyphen_values = true)]
        threshold: String,
        #[arg(long, default_value_t = 5)]
        radius: usize,
        /// Defect constant to use (default: the analytic bound `3(l - 1)`).
        #[arg(long = "C", allow_hyphen_values = true)]
        defect: Option<String>,
    },
    /// `f(g^N) / N` for the given words.
    Homogenize {
        /// Comma-separated words (default: the pattern and every generator).
        #[arg(long)]
        at: Option<String>,
        #[arg(long, default_value_t = 64)]
        power: u64,
    },
    /// Commensurability of the quasi-kernels of `f` and `f` conjugated.
    Commensurate {
        #[arg(long = "R", allow_hyphen_values = true)]
        threshold: String,
        /// Threshold for the conjugated quasi-morphism (default: same as R).
        #[arg(long = "R2", allow_hyphen_values = true)]
        threshold2: Option<String>,
        #[arg(long, default_value_t = 5)]
        radius: usize,
        /// Conjugating word (default: first letter of the pattern).
        #[arg(long)]
        by: Option<String>,
        #[arg(long = "C", allow_hyphen_values = true)]
        defect: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long = "K")]
    pub k: u64,
    #[arg(long)]
    pub m: u64,
}

/// Failures that stop a command before a report exists.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl From<meyerkit::Error> for CliError {
    fn from(e: meyerkit::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(pool) => pool,
        Err(e) => return usage_failure(&CliError::Usage(format!("thread pool: {e}"))),
    };
    let result = pool.install(|| commands::dispatch(&cli));
    let report = match result {
        Ok(report) => report,
        Err(e) => return usage_failure(&e),
    };
    let json = report.to_json();
    let code = report.exit_code();
    match &cli.report {
        Some(path) => match std::fs::write(path, &json) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => usage_failure(&CliError::Io(format!("{}: {e}", path.display()))),
        },
        None => Outcome { code, stdout: json, stderr: String::new() },
    }
}

fn usage_failure(e: &CliError) -> Outcome {
    Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") }
}
