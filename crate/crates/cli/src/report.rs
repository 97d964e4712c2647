//! Suite execution and the report it produces.

use gleason_lab::scalar::Algebra;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Format, RunConfig};
use crate::properties::{Cell, Outcome, Property};

pub const VERSION: &str = concat!("gleason-lab ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub statement: String,
    pub algebra: Algebra,
    pub dim: usize,
    pub seed: u64,
    pub trials: usize,
    /// Worst residual over the trials; absent for skipped records.
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    /// A characteristic value of the check, e.g. the gap exhibited by a counterexample.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed: Option<f64>,
    /// Skip reason or error message.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Record {
    pub fn pass(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub version: String,
    pub config: RunConfig,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl SuiteReport {
    pub fn new(config: RunConfig, records: Vec<Record>) -> Self {
        let mut summary = Summary {
            total: records.len(),
            ..Summary::default()
        };
        for r in &records {
            match r.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        SuiteReport {
            version: VERSION.to_string(),
            config,
            summary,
            records,
        }
    }

    /// Exit status 0 iff no record that ran failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.failed > 0)
    }
}

fn evaluate(p: &Property, cell: Cell, tolerance: f64) -> Record {
    let mut record = Record {
        name: p.name.to_string(),
        statement: p.statement.to_string(),
        algebra: cell.algebra,
        dim: cell.dim,
        seed: cell.seed,
        trials: cell.trials,
        max_residual: None,
        tolerance,
        status: Status::Skipped,
        observed: None,
        note: None,
    };
    match p.evaluate(&cell) {
        Outcome::Skipped(reason) => record.note = Some(reason.to_string()),
        Outcome::Measured {
            residual,
            observed,
            note,
        } => {
            record.status = if residual <= tolerance {
                Status::Pass
            } else {
                Status::Fail
            };
            record.max_residual = Some(residual);
            record.observed = observed;
            record.note = note;
        }
    }
    record
}

/// Run every selected property on every cell. Cells run in parallel; records
/// come back ordered by (property, algebra, dim, seed).
pub fn run_suite(cfg: &RunConfig) -> SuiteReport {
    let properties = cfg.selected().expect("validated config");
    let mut jobs = Vec::new();
    for p in properties {
        for &algebra in &cfg.algebras {
            for &dim in &cfg.dims {
                for &seed in &cfg.seeds {
                    jobs.push((
                        p,
                        Cell {
                            algebra,
                            dim,
                            seed,
                            trials: cfg.trials,
                        },
                    ));
                }
            }
        }
    }
    let records = jobs
        .into_par_iter()
        .map(|(p, cell)| evaluate(p, cell, cfg.tolerance_of(p)))
        .collect();
    SuiteReport::new(cfg.clone(), records)
}

fn text_line(r: &Record) -> String {
    let status = match r.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
    };
    let mut line = format!(
        "{status} {:<38} {} n={:<2} seed={} trials={}",
        r.name, r.algebra, r.dim, r.seed, r.trials
    );
    if let Some(res) = r.max_residual {
        line += &format!(" residual={res:.3e} tol={:.1e}", r.tolerance);
    }
    if let Some(v) = r.observed {
        line += &format!(" observed={v}");
    }
    if let Some(note) = &r.note {
        line += &format!(" ({note})");
    }
    line
}

/// JSON is pretty-printed with a trailing newline; text is one line per record
/// followed by a `#` summary line.
pub fn emit_report(r: &SuiteReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(r).expect("reports serialize");
            bytes.push(b'\n');
            bytes
        }
        Format::Text => {
            let mut out = String::new();
            for rec in &r.records {
                out += &text_line(rec);
                out.push('\n');
            }
            let s = r.summary;
            out += &format!(
                "# {}: {} records, {} passed, {} failed, {} skipped\n",
                r.version, s.total, s.passed, s.failed, s.skipped
            );
            out.into_bytes()
        }
    }
}

pub fn parse_report(bytes: &[u8]) -> serde_json::Result<SuiteReport> {
    serde_json::from_slice(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig {
            algebras: vec![Algebra::Complex],
            dims: vec![3],
            trials: 2,
            ..RunConfig::default()
        }
        .validated()
        .unwrap()
    }

    #[test]
    fn empty_suite_round_trips() {
        let r = SuiteReport::new(small(), vec![]);
        assert_eq!(r.summary.total, 0);
        assert_eq!(r.exit_code(), 0);
        assert_eq!(parse_report(&emit_report(&r, Format::Json)).unwrap(), r);
        let text = String::from_utf8(emit_report(&r, Format::Text)).unwrap();
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn records_follow_table_order() {
        let cfg = RunConfig {
            seeds: vec![2, 1],
            ..small()
        }
        .validated()
        .unwrap();
        let r = run_suite(&cfg);
        let names: Vec<&str> = cfg.selected().unwrap().iter().map(|p| p.name).collect();
        for (k, chunk) in r.records.chunks(2).enumerate() {
            assert!(chunk.iter().all(|rec| rec.name == names[k]));
            assert_eq!((chunk[0].seed, chunk[1].seed), (1, 2));
        }
        let text = String::from_utf8(emit_report(&r, Format::Text)).unwrap();
        assert_eq!(text.lines().count(), r.records.len() + 1);
    }

    #[test]
    fn pass_iff_within_tolerance() {
        let mut cfg = small();
        cfg.tolerances.insert("trace.real_cyclicity".into(), 1e-300);
        cfg.only = Some("trace.real_cyclicity".into());
        let r = run_suite(&cfg);
        for rec in &r.records {
            let res = rec.max_residual.unwrap();
            assert_eq!(rec.pass(), res <= rec.tolerance);
        }
    }
}
