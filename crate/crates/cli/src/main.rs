//! `qaw`: verification runs, symmetry censuses, figure graphs and point
//! evaluation of the Askey-Wilson representations.
//!
//! Exit codes: 0 success, 1 verification failure or count mismatch, 2 usage,
//! parse or I/O error.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qaw::symmetry::Figure;

use commands::{CensusKind, EvalInput};
use config::{Format, RunConfig};

#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self::usage(message)
    }

    /// A library error outside any user input; reported as a failure.
    pub fn internal(e: qaw::Error) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(name = "qaw", version, about = "Exact checks of terminating q-series identities and their symmetry censuses")]
struct Cli {
    /// Base seed for sampled evaluation points. QAW_SEED overrides it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest degree n sampled.
    #[arg(long = "n-max", global = true, default_value_t = 6)]
    n_max: u32,
    /// Sampled points per identity and for the representation sweep.
    #[arg(long, global = true, default_value_t = 25)]
    envs: usize,
    /// Directory for reports and graphs.
    #[arg(long, global = true, default_value = "qaw-out")]
    out: PathBuf,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigureArg {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Subcommand)]
enum Command {
    /// Verify every catalog identity and sweep the seven representations.
    Verify {
        /// Catalog TOML to use instead of the built-in one.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Count the classes of a group orbit and compare with the published table.
    Census {
        #[arg(value_enum)]
        which: CensusKind,
    },
    /// Write a figure as DOT.
    Graph {
        #[arg(value_enum)]
        which: FigureArg,
    },
    /// Evaluate one representation of p_n at a point.
    Eval {
        #[arg(long)]
        n: u32,
        /// a1..a4 as num/den, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        /// aw:defK, defK or DK.
        #[arg(long, default_value = "def1")]
        rep: String,
        /// 1-based roles p,r,t,u of a1..a4.
        #[arg(long, value_delimiter = ',')]
        roles: Option<Vec<usize>>,
        /// Also print the residual against the defining 4phi3.
        #[arg(long)]
        check: bool,
    },
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let cfg = RunConfig::resolve(
        cli.seed,
        std::env::var("QAW_SEED").ok(),
        cli.n_max,
        cli.envs,
        cli.out,
        cli.format,
    )?;
    match &cli.command {
        Command::Verify { catalog } => commands::verify(&cfg, catalog.as_deref()),
        Command::Census { which } => commands::census(&cfg, *which),
        Command::Graph { which } => {
            let (fig, name) = match which {
                FigureArg::Fig1 => (Figure::Fig1, "fig1"),
                FigureArg::Fig2 => (Figure::Fig2, "fig2"),
                FigureArg::Fig3 => (Figure::Fig3, "fig3"),
            };
            commands::graph(&cfg, fig, name)
        }
        Command::Eval {
            n,
            a,
            t,
            q,
            rep,
            roles,
            check,
        } => commands::eval(
            &cfg,
            EvalInput {
                n: *n,
                a,
                t,
                q,
                rep,
                roles: roles.as_deref(),
                check: *check,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
