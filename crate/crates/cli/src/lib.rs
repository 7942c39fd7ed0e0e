//! Command-line front end for flagforge.
//!
//! [`run`] parses arguments, runs one command and writes a JSON or CSV
//! document to the given writer. Exit codes: 0 success, 1 verification
//! mismatch, 2 usage or input error, 3 enumeration budget exceeded.

pub mod commands;
pub mod document;
pub mod spec;

use clap::{Parser, Subcommand, ValueEnum};
use commands::{ConstructArgs, Op, Report};
use flagforge::MasterConfig;
use spec::{FamilySpec, ObjectSpec};
use std::ffi::OsString;
use std::io::Write;

pub use document::{PolynomialDocument, Table, TermDocument};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Budget(String),
}

impl From<flagforge::Error> for Failure {
    fn from(e: flagforge::Error) -> Self {
        match e {
            flagforge::Error::BudgetExceeded { .. } => Self::Budget(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "flagforge",
    version,
    about = "Flag polynomials of Minkowski sums of simplices"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// l-flag polynomial of the sum of simplices of a set family.
    Flag {
        #[arg(long)]
        family: FamilySpec,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        ell: u64,
        /// Rewrite in partial-sum exponents (variables y1..yl).
        #[arg(long)]
        phi: bool,
        /// Count strictly increasing chains only.
        #[arg(long)]
        strict: bool,
    },
    /// f-polynomial of the sum of simplices of a set family.
    Fpoly {
        #[arg(long)]
        family: FamilySpec,
    },
    /// The master family for k sets: its face numbers and chain counts.
    Master {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        ell: u64,
    },
    /// Flag polynomial of a polytope built from simpler ones.
    ///
    /// Operands: point, simplex:R (R vertices), cube:D, family:SPEC.
    Construct {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        of: Option<ObjectSpec>,
        #[arg(long = "with")]
        with: Option<ObjectSpec>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        ell: u64,
        /// Dimension for --op hypercube.
        #[arg(long)]
        d: Option<u32>,
    },
    /// Extremal face counts over two-set families.
    #[command(subcommand)]
    Extremal(ExtremalCommand),
    /// Compare the theorem against direct face enumeration.
    Verify {
        #[arg(
            long,
            required_unless_present = "corpus",
            conflicts_with = "corpus",
            requires = "ell"
        )]
        family: Option<FamilySpec>,
        /// Largest chain length to check; caps the corpus lengths with --corpus.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        ell: Option<u64>,
        /// Check the built-in corpus of two- and three-set families.
        #[arg(long)]
        corpus: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExtremalCommand {
    /// Largest number of d-faces over two-set families on r elements.
    MaxFaces {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        argmax: bool,
    },
    /// Largest gap between (0,d)-chains and (0,d)-incidences of simple sums.
    Discrepancy {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        argmax: bool,
        /// Include the predicted window for r2 + r3.
        #[arg(long)]
        window: bool,
    },
}

fn execute(command: &Command, cfg: &MasterConfig) -> Result<Report, Failure> {
    let usize_of = |n: u64| usize::try_from(n).map_err(|_| Failure::Usage(format!("{n} is too large")));
    match command {
        Command::Flag {
            family,
            ell,
            phi,
            strict,
        } => commands::flag(family, usize_of(*ell)?, *phi, *strict, cfg),
        Command::Fpoly { family } => commands::fpoly(family, cfg),
        Command::Master { k, ell } => commands::master(*k, usize_of(*ell)?, cfg),
        Command::Construct { op, of, with, ell, d } => commands::construct(
            ConstructArgs {
                op: *op,
                of: of.as_ref(),
                with: with.as_ref(),
                ell: usize_of(*ell)?,
                d: *d,
            },
            cfg,
        ),
        Command::Extremal(ExtremalCommand::MaxFaces { r, d, argmax }) => commands::max_faces_cmd(*r, *d, *argmax),
        Command::Extremal(ExtremalCommand::Discrepancy { r, d, argmax, window }) => {
            commands::discrepancy_cmd(*r, *d, *argmax, *window)
        }
        Command::Verify { family, ell, corpus } => {
            let ell = ell.map(usize_of).transpose()?;
            let families = match family {
                Some(spec) if !corpus => vec![(spec.family().clone(), ell.expect("clap requires --ell"))],
                _ => commands::corpus(ell),
            };
            commands::verify(&families, cfg)
        }
    }
}

/// Runs one command line. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let outcome = MasterConfig::from_env()
        .map_err(Failure::from)
        .and_then(|cfg| execute(&cli.command, &cfg));
    match outcome {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.json + "\n",
                Format::Csv => report.table.to_csv(),
            };
            if let Err(e) = out.write_all(text.as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if report.mismatch {
                let _ = writeln!(err, "error: theorem and oracle disagree");
                EXIT_MISMATCH
            } else {
                EXIT_OK
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Budget(msg)) => {
            let _ = writeln!(err, "error: {msg}\nhint: raise {}", flagforge::facelattice::BUDGET_ENV);
            EXIT_BUDGET
        }
    }
}
