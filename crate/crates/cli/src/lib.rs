//! File-driven experiments over `covering_forge`. Every report starts with a
//! run manifest and is deterministic given it.

pub mod commands;
pub mod error;
pub mod input;
pub mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use covering_forge::surgery::SheetChoice;

pub use error::CliError;
pub use manifest::RunManifest;

pub const DEFAULT_SEED: u64 = 7;
pub const THREADS_ENV: &str = "COVERING_FORGE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "covering-forge",
    version,
    about = "Branched coverings, Hurwitz classes, sandwich maps and Julia slices"
)]
pub struct Cli {
    /// Seed for randomized harnesses [default: 7]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; COVERING_FORGE_THREADS takes precedence
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output file (or directory for sweep)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check constellation files record by record
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Iterated connected sum of two or more constellations
    Sum {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Shared sheets LEFT:RIGHT, one per fold step
        #[arg(long = "plan", value_parser = input::parse_sheet)]
        plans: Vec<SheetChoice>,
    },
    /// Formal mating of two polynomial constellations
    Mate { p: PathBuf, q: PathBuf },
    /// Dump the Hurwitz orbit of a constellation
    Orbit {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Are two constellations (or collections) Hurwitz equivalent?
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Is the class closed under orientation reversal?
    Symmetric {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Exact check of a sandwich isomorphism on random samples
    VerifySandwich {
        /// key = value file with R1, h, g and optionally R2, samples, seed, conjugate, degree, height
        spec: Option<PathBuf>,
    },
    /// Render one Julia slice of f_t(z) = (1-t)z^2 + tz^3
    Julia {
        #[arg(long)]
        t: String,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Render slices for a list of parameters
    Sweep {
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<String>,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Beltrami norms of the iterates of z|z|
    Pinch {
        /// N or A..B
        #[arg(long, default_value = "1..6")]
        n: String,
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        #[arg(long, default_value_t = 100)]
        radial: usize,
        #[arg(long, default_value_t = 100)]
        angular: usize,
        #[arg(long, default_value_t = 1e-6)]
        step: f64,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct BudgetArgs {
    /// Maximum number of classes to visit
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: usize,
    #[arg(long)]
    pub max_depth: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    F32,
    F64,
}

#[derive(Debug, Clone, Args)]
pub struct RenderArgs {
    #[arg(long, default_value_t = 512)]
    pub resolution: usize,
    #[arg(long, default_value_t = 500)]
    pub max_iter: u32,
    /// Window half width [default: fits the filled Julia set]
    #[arg(long)]
    pub half_width: Option<f64>,
    /// RE,IM
    #[arg(long, default_value = "0,0", value_parser = input::parse_center, allow_hyphen_values = true)]
    pub center: (f64, f64),
    /// [default: max(2, 3/t)]
    #[arg(long)]
    pub escape_radius: Option<f64>,
    #[arg(long, value_enum, default_value_t = Precision::F64)]
    pub precision: Precision,
}

/// How a successful run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Yes => 0,
            Outcome::No => 1,
            Outcome::Inconclusive => 2,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 64 } else { 0 };
        }
    };
    match execute(&cli, out) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    configure_threads(cli.threads)?;
    let ctx = commands::Context {
        seed: cli.seed,
        out: cli.out.clone(),
    };
    match &cli.command {
        Command::Validate { files } => commands::covering::validate(&ctx, files, out),
        Command::Sum { files, plans } => commands::covering::sum(&ctx, files, plans, out),
        Command::Mate { p, q } => commands::covering::mate(&ctx, p, q, out),
        Command::Orbit { file, budget } => commands::classes::orbit(&ctx, file, *budget, out),
        Command::Equiv { a, b, budget } => commands::classes::equiv(&ctx, a, b, *budget, out),
        Command::Symmetric { file, budget } => {
            commands::classes::symmetric(&ctx, file, *budget, out)
        }
        Command::VerifySandwich { spec } => commands::sandwich::verify(&ctx, spec.as_deref(), out),
        Command::Julia { t, render } => commands::julia::julia(&ctx, t, render, out),
        Command::Sweep { t, render } => commands::julia::sweep(&ctx, t, render, out),
        Command::Pinch {
            n,
            r,
            radial,
            angular,
            step,
        } => commands::julia::pinch(&ctx, n, *r, *radial, *angular, *step, out),
    }
}

/// The global pool can be sized once per process; later requests are ignored.
fn configure_threads(flag: Option<usize>) -> Result<(), CliError> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => Some(v.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!("{THREADS_ENV} must be a thread count, got {v}"))
        })?),
        _ => flag,
    };
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(())
}
