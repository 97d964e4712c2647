//! Batch harness over `gleason_lab`: a table of properties, a run matrix of
//! (algebra, dim, seed) cells, and deterministic JSON or text reports.

pub mod config;
pub mod demo;
pub mod properties;
pub mod report;

pub use config::{Cli, ConfigError, Format, RunConfig};
pub use demo::{demo_counterexamples, Transcript};
pub use report::{emit_report, parse_report, run_suite, Record, Status, SuiteReport};
