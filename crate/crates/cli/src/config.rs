use std::path::PathBuf;

use clap::ValueEnum;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Dot => "dot",
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub n_max: u32,
    pub envs_per_check: usize,
    pub output_dir: PathBuf,
    /// `None` leaves the choice to the command.
    pub format: Option<Format>,
}

impl RunConfig {
    /// `QAW_SEED`, when set, wins over `--seed`.
    pub fn resolve(
        seed: u64,
        seed_env: Option<String>,
        n_max: u32,
        envs: usize,
        output_dir: PathBuf,
        format: Option<Format>,
    ) -> Result<Self, CliError> {
        let seed = match seed_env {
            Some(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("QAW_SEED is not an unsigned integer: {s:?}")))?,
            None => seed,
        };
        if envs == 0 {
            return Err(CliError::usage("--envs must be at least 1"));
        }
        Ok(RunConfig {
            seed,
            n_max,
            envs_per_check: envs,
            output_dir,
            format,
        })
    }

    /// The requested format, or `default`, if the command can write it.
    pub fn format_for(&self, default: Format, allowed: &[Format], command: &str) -> Result<Format, CliError> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::usage(format!("{command} cannot write {} output", f.name())))
        }
    }
}
