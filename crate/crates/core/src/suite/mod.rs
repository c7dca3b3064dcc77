//! Check suites and their JSON reports.

mod checks;
mod config;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use checks::{anchor, catalogue, run_check, unit_params, CheckSpec, ANCHORS};
pub use config::{Backend, Preset, RunConfig, Suite};

use crate::error::{Error, Result};
pub use crate::pit::Verdict;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub name: String,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub anchor: String,
    pub parameters: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub residuals: Vec<ResidualEntry>,
    pub details: serde_json::Value,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub proved_exact: usize,
    pub passed_numeric: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub config: BTreeMap<String, String>,
    pub summary: Summary,
    pub records: Vec<CheckRecord>,
    pub seconds: f64,
}

impl Report {
    pub fn has_failures(&self) -> bool {
        self.summary.failed > 0
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failures())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The same report with every timing field zeroed.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.seconds = 0.0;
        for rec in &mut r.records {
            rec.seconds = 0.0;
        }
        r
    }

    pub fn record(&self, check_id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.check_id == check_id)
    }

    /// Records whose check id starts with `family`.
    pub fn family<'a>(&'a self, family: &'a str) -> impl Iterator<Item = &'a CheckRecord> + 'a {
        self.records
            .iter()
            .filter(move |r| r.check_id == family || r.check_id.starts_with(&format!("{family}[")))
    }
}

fn summarize(records: &[CheckRecord]) -> Summary {
    let mut s = Summary {
        total: records.len(),
        ..Summary::default()
    };
    for r in records {
        match r.verdict {
            Verdict::ProvedExact => s.proved_exact += 1,
            Verdict::PassedNumeric => s.passed_numeric += 1,
            Verdict::Failed => s.failed += 1,
            Verdict::Skipped => s.skipped += 1,
        }
    }
    s
}

/// Runs every selected check on `config.workers` threads and writes the
/// report to `config.report` when set.
pub fn run_suite(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let specs = catalogue(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let records: Vec<CheckRecord> = pool.install(|| specs.par_iter().map(|c| run_check(c, config)).collect());
    let report = Report {
        config: config.pairs().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        summary: summarize(&records),
        records,
        seconds: start.elapsed().as_secs_f64(),
    };
    if let Some(path) = &config.report {
        std::fs::write(path, report.to_json()).map_err(|e| Error::InvalidArgument(format!("writing {path}: {e}")))?;
    }
    Ok(report)
}
