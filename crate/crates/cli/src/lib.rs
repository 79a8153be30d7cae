//! Command line front end: algebra files, verdict reports and DOT output.

pub mod dot;
pub mod parse;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use higherar::complete::DEFAULT_SLICE_CAP;
use higherar::exactla::{PrimeField, Rationals};
use higherar::knit::DEFAULT_KNIT_CAP;
use higherar::Error;

pub use parse::{load, parse_algebra_text, print_algebra_file, AlgebraFile, FieldSpec, LoadedFile, ParseError};

pub const DEFAULT_PRIME: u32 = 32003;
pub const DEFAULT_SEED: u64 = 1;

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: {1}")]
    Parse(String, ParseError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(..) | CliError::Input(_) => EXIT_INPUT,
            CliError::Core(e) => match e {
                Error::CyclicQuiver(_) | Error::InconsistentRelation(_) | Error::CharTooSmall { .. } => EXIT_INPUT,
                Error::DecompositionInconclusive { .. } | Error::CapExceeded(_) => EXIT_INCONCLUSIVE,
                _ => EXIT_FAILED,
            },
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "higherar", version, about = "Higher Auslander-Reiten theory for bound quiver algebras")]
pub struct Cli {
    /// Work over GF(p), overriding the field line of the input files.
    #[arg(long, global = true)]
    pub prime: Option<u32>,
    #[arg(long, global = true, env = "HIGHERAR_SEED")]
    pub seed: Option<u64>,
    /// Bound on τ_d slices and on knitted indecomposables.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify d-completeness.
    Check {
        alg: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Verify the tensor product of an n-complete and an m-complete algebra.
    TensorCheck {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Print a quiver as DOT.
    Quiver {
        alg: PathBuf,
        /// The quiver of 𝓜 with dashed τ_d arrows.
        #[arg(long, conflicts_with = "ar")]
        m_cat: bool,
        /// The Auslander-Reiten quiver with dashed τ arrows.
        #[arg(long)]
        ar: bool,
        /// Defaults to the global dimension.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Tag every indecomposable against T and 𝓜, and classify the algebra.
    Classify {
        alg: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// The d-almost split sequences of 𝓜.
    Sequences {
        alg: PathBuf,
        #[arg(long)]
        d: usize,
        /// Right end, as the dimension grid of a member.
        #[arg(long)]
        end: Option<String>,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct Settings {
    pub seed: u64,
    pub slice_cap: usize,
    pub knit_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments and runs the command, capturing its output.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_VERIFIED };
            let text = e.render().to_string();
            if code == EXIT_VERIFIED {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let settings = Settings {
        seed: cli.seed.unwrap_or(DEFAULT_SEED),
        slice_cap: cli.cap.unwrap_or(DEFAULT_SLICE_CAP),
        knit_cap: cli.cap.unwrap_or(DEFAULT_KNIT_CAP),
    };
    let mut out = String::new();
    match dispatch(cli, &settings, &mut out) {
        Ok(code) => Outcome { code, stdout: out, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: out, stderr: format!("error: {e}\n") },
    }
}

fn field_for(cli: &Cli, files: &[&LoadedFile]) -> Result<FieldSpec, CliError> {
    if let Some(p) = cli.prime {
        if !parse::is_prime(p) {
            return Err(CliError::Input(format!("--prime {p} is not a prime below 2^31")));
        }
        return Ok(FieldSpec::Prime(p));
    }
    let mut found = None;
    for f in files {
        match (found, f.field()?) {
            (Some(a), Some(b)) if a != b => return Err(CliError::Input("input files are over different fields".into())),
            (None, b) => found = b,
            _ => {}
        }
    }
    Ok(found.unwrap_or(FieldSpec::Prime(DEFAULT_PRIME)))
}

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p);
                $body
            }
        }
    };
}

fn dispatch(cli: &Cli, s: &Settings, out: &mut String) -> Result<i32, CliError> {
    match &cli.command {
        Command::Check { alg, d } => {
            let file = load(alg)?;
            with_field!(field_for(cli, &[&file])?, f => report::check(&file.build(&f)?, *d, s, out))
        }
        Command::TensorCheck { a, b, n, m } => {
            let (fa, fb) = (load(a)?, load(b)?);
            with_field!(field_for(cli, &[&fa, &fb])?, f => report::tensor_check(&fa.build(&f)?, &fb.build(&f)?, *n, *m, s, out))
        }
        Command::Quiver { alg, m_cat, ar, d } => {
            let file = load(alg)?;
            with_field!(field_for(cli, &[&file])?, f => report::quiver(&file.build(&f)?, *m_cat, *ar, *d, s, out))
        }
        Command::Classify { alg, d } => {
            let file = load(alg)?;
            with_field!(field_for(cli, &[&file])?, f => report::classify(&file.build(&f)?, *d, s, out))
        }
        Command::Sequences { alg, d, end } => {
            let file = load(alg)?;
            with_field!(field_for(cli, &[&file])?, f => report::sequences(&file.build(&f)?, *d, end.as_deref(), s, out))
        }
    }
}
