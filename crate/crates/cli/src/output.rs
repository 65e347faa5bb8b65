use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use tempfile::NamedTempFile;

use qaw::symmetry::{template_checksum, CensusRow};

use crate::CliError;

#[derive(Serialize)]
pub struct RunInfo {
    pub seed: u64,
    pub nmax: u32,
    pub envs: usize,
    /// SHA-256 of the frozen class template signatures.
    pub templates: &'static str,
}

impl RunInfo {
    pub fn new(cfg: &crate::config::RunConfig) -> Self {
        RunInfo {
            seed: cfg.seed,
            nmax: cfg.n_max,
            envs: cfg.envs_per_check,
            templates: template_checksum(),
        }
    }
}

/// Writes `contents` to `dir/name` through a temp file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    let io = |e: std::io::Error| CliError::io(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let mut tmp = NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    let path = dir.join(name);
    tmp.persist(&path).map_err(|e| io(e.error))?;
    Ok(path)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn to_csv(rows: &[CensusRow]) -> String {
    let mut s = String::from("source_class,target_class,count\n");
    for r in rows {
        s.push_str(&format!("{},{},{}\n", r.source_class, r.target_class, r.count));
    }
    s
}
