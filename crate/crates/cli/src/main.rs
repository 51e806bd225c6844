//! Command-line harness: build graph families, enumerate independent
//! r-sets, verify EKR status, batch-scan r ranges, reproduce the explicit
//! counterexample constructions, and demo the shift/shadow machinery.
//!
//! Exit codes: 0 success (verify: EKR or StrictlyEKR), 1 I/O or internal
//! error, 2 usage error, 3 NotEKR, 4 uncertified (solver cap hit).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ekr_core::error::Error;

mod commands;
mod graphspec;

pub use graphspec::{GraphArgs, RRange};

#[derive(Parser, Debug)]
#[command(
    name = "ekr",
    version,
    about = "EKR-type verification on pendant graph constructions"
)]
pub struct RunConfig {
    /// Seed for randomized probes (reserved; current commands are
    /// deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Canonical,
    Parallel,
}

#[derive(Args, Debug)]
pub struct SolverArgs {
    /// Member cap for the exact solver.
    #[arg(long, default_value_t = ekr_core::solver::DEFAULT_MEMBER_CAP)]
    pub cap: usize,
    /// Search mode; canonical pins the witness bit-for-bit.
    #[arg(long, value_enum, default_value_t = ModeArg::Canonical)]
    pub mode: ModeArg,
}

impl SolverArgs {
    pub fn to_config(&self) -> Result<ekr_core::SolverConfig, Error> {
        if self.cap == 0 {
            return Err(Error::InvalidParameter("cap must be >= 1".into()));
        }
        Ok(ekr_core::SolverConfig {
            member_cap: self.cap,
            mode: match self.mode {
                ModeArg::Canonical => ekr_core::SolverMode::Canonical,
                ModeArg::Parallel => ekr_core::SolverMode::Parallel,
            },
        })
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a graph and export it in DIMACS-with-roles format.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the independent r-sets of a graph.
    Enumerate {
        #[command(flatten)]
        graph: GraphArgs,
        /// Set size r.
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide the r-EKR status of a graph exactly.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        r: usize,
        /// Also enumerate all maximum families to test strictness.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a whole range of r values and tabulate the verdicts.
    Scan {
        #[command(flatten)]
        graph: GraphArgs,
        /// r value or inclusive range, e.g. `3` or `1..6`.
        #[arg(long)]
        r: RRange,
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reproduce the pendant-path counterexample construction at (n, k).
    Counterexample {
        #[arg(long)]
        n: usize,
        /// Gap k: r = n - k. k >= 2 uses the pendant tail, k = 1 the
        /// alternate tail, k = 0 the full family minus one complement.
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Iterate the base-to-pendant shifts to a stable family.
    ShiftDemo {
        #[command(flatten)]
        family: commands::FamilySource,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print shadow sizes of a family per level.
    Shadow {
        #[command(flatten)]
        family: commands::FamilySource,
        /// Single shadow level; all levels from r down to 0 when omitted.
        #[arg(long)]
        level: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare closed-form star sizes against enumeration.
    StarTable {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        r: RRange,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match commands::run(config) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Io(_) => 1,
                Error::ResourceLimit { .. } => 4,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
