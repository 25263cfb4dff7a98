//! Parameter sweeps over `alpha x seed`, one run directory each.

use crate::config::{ConfigError, Overrides, RunConfig};
use crate::run::{run_to_dir, RunError};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("sweep needs at least one {0}")]
    Empty(&'static str),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {error}")]
    Output { path: PathBuf, error: std::io::Error },
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepEntry {
    pub alpha: f64,
    pub seed: u64,
    pub dir: PathBuf,
    pub status: String,
    pub peak_count: Option<usize>,
    pub half_peaks: Option<usize>,
    pub settling_time: Option<f64>,
    pub left_value: Option<f64>,
    pub right_value: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepIndex {
    pub entries: Vec<SweepEntry>,
}

impl SweepIndex {
    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| e.status != "ok").count()
    }
}

fn entry(alpha: f64, seed: u64, dir: PathBuf, result: Result<crate::run::RunOutcome, RunError>) -> SweepEntry {
    match result {
        Ok(o) => {
            let last = o.final_state();
            SweepEntry {
                alpha,
                seed,
                dir,
                status: "ok".into(),
                peak_count: Some(o.census.count),
                half_peaks: Some(o.census.half_peaks()),
                settling_time: o.manifest.settling_time,
                left_value: last.u.first().copied(),
                right_value: last.u.last().copied(),
                error: None,
            }
        }
        Err(e) => {
            log::error!("alpha {alpha} seed {seed}: {e}");
            SweepEntry {
                alpha,
                seed,
                dir,
                status: "failed".into(),
                peak_count: None,
                half_peaks: None,
                settling_time: None,
                left_value: None,
                right_value: None,
                error: Some(e.to_string()),
            }
        }
    }
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, |v| v.to_string())
}

pub fn summary_csv(index: &SweepIndex) -> String {
    let mut s = String::from("alpha,seed,status,peak_count,half_peaks,settling_time,left_value,right_value,dir\n");
    for e in &index.entries {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            e.alpha,
            e.seed,
            e.status,
            opt(&e.peak_count),
            opt(&e.half_peaks),
            opt(&e.settling_time),
            opt(&e.left_value),
            opt(&e.right_value),
            e.dir.display()
        );
    }
    s
}

/// Runs every `(alpha, seed)` combination in parallel under `root`, then
/// writes `summary.csv` and `index.json`. Failed runs are recorded, not fatal.
pub fn sweep(base: &RunConfig, alphas: &[f64], seeds: &[u64], root: &Path) -> Result<SweepIndex, SweepError> {
    if alphas.is_empty() {
        return Err(SweepError::Empty("alpha"));
    }
    if seeds.is_empty() {
        return Err(SweepError::Empty("seed"));
    }
    let jobs: Vec<(f64, u64, RunConfig)> = alphas
        .iter()
        .flat_map(|&a| seeds.iter().map(move |&s| (a, s)))
        .map(|(a, s)| {
            let mut c = base.clone();
            c.apply(&Overrides { alpha: Some(a), seed: Some(s), ..Default::default() });
            c.output_dir = None;
            (a, s, c)
        })
        .collect();
    let entries = jobs
        .into_par_iter()
        .map(|(a, s, c)| {
            let dir = root.join(c.label());
            let result = run_to_dir(&c, &dir);
            entry(a, s, dir, result)
        })
        .collect();
    let index = SweepIndex { entries };
    std::fs::create_dir_all(root).map_err(|error| SweepError::Output { path: root.to_owned(), error })?;
    let write = |name: &str, text: String| {
        let path = root.join(name);
        std::fs::write(&path, text).map_err(|error| SweepError::Output { path, error })
    };
    write("summary.csv", summary_csv(&index))?;
    write("index.json", serde_json::to_string_pretty(&index).expect("index serializes") + "\n")?;
    Ok(index)
}
