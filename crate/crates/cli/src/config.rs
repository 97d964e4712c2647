//! Run configuration: defaults, then `GLEASON_LAB_SEED`, then a JSON file,
//! then command-line flags, each layer overriding the previous one.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use gleason_lab::scalar::Algebra;
use serde::{Deserialize, Serialize};

use crate::properties::{self, Property, PROPERTIES};

pub const SEED_ENV: &str = "GLEASON_LAB_SEED";

/// Desk-scale limit; Jacobi on the 2n x 2n embedding stays fast below this.
pub const MAX_DIM: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub algebras: Vec<Algebra>,
    pub dims: Vec<usize>,
    pub seeds: Vec<u64>,
    pub trials: usize,
    /// Per-property tolerance overrides, keyed by property name.
    pub tolerances: BTreeMap<String, f64>,
    /// Glob over property names; `None` runs everything.
    pub only: Option<String>,
    pub output_path: Option<String>,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            algebras: Algebra::ALL.to_vec(),
            dims: vec![2, 3, 4],
            seeds: vec![1],
            trials: 10,
            tolerances: BTreeMap::new(),
            only: None,
            output_path: None,
            format: Format::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

/// A config file: every field optional, unknown fields rejected.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub algebras: Option<Vec<Algebra>>,
    pub dims: Option<Vec<usize>>,
    pub seeds: Option<Vec<u64>>,
    pub trials: Option<usize>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    pub only: Option<String>,
    pub output_path: Option<String>,
    pub format: Option<Format>,
}

impl RunConfig {
    /// Sort and deduplicate the axes and reject values the suite cannot run.
    pub fn validated(mut self) -> Result<Self, ConfigError> {
        self.dims.sort_unstable();
        self.dims.dedup();
        self.algebras.sort_unstable();
        self.algebras.dedup();
        self.seeds.sort_unstable();
        self.seeds.dedup();
        if self.algebras.is_empty() || self.dims.is_empty() || self.seeds.is_empty() {
            return Err(invalid("algebras, dims and seeds must be nonempty"));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d == 0 || d > MAX_DIM) {
            return Err(invalid(format!("dim {d} is outside 1..={MAX_DIM}")));
        }
        if self.trials == 0 {
            return Err(invalid("trials must be at least 1"));
        }
        for (name, &tol) in &self.tolerances {
            if properties::find(name).is_none() {
                return Err(invalid(format!("unknown property '{name}' in tolerances")));
            }
            if !(tol.is_finite() && tol > 0.0) {
                return Err(invalid(format!(
                    "tolerance for '{name}' must be positive, got {tol}"
                )));
            }
        }
        if self.selected()?.is_empty() {
            return Err(invalid(format!(
                "--only '{}' matches no property",
                self.only.as_deref().unwrap_or("")
            )));
        }
        Ok(self)
    }

    /// Properties passing the `only` filter, in table order.
    pub fn selected(&self) -> Result<Vec<&'static Property>, ConfigError> {
        let pattern = match &self.only {
            Some(p) => Some(
                glob::Pattern::new(p).map_err(|e| invalid(format!("bad --only pattern: {e}")))?,
            ),
            None => None,
        };
        Ok(PROPERTIES
            .iter()
            .filter(|p| pattern.as_ref().is_none_or(|g| g.matches(p.name)))
            .collect())
    }

    pub fn tolerance_of(&self, p: &Property) -> f64 {
        self.tolerances.get(p.name).copied().unwrap_or(p.tolerance)
    }

    fn overlay(&mut self, file: ConfigFile) {
        let ConfigFile {
            algebras,
            dims,
            seeds,
            trials,
            tolerances,
            only,
            output_path,
            format,
        } = file;
        if let Some(v) = algebras {
            self.algebras = v;
        }
        if let Some(v) = dims {
            self.dims = v;
        }
        if let Some(v) = seeds {
            self.seeds = v;
        }
        if let Some(v) = trials {
            self.trials = v;
        }
        self.tolerances.extend(tolerances);
        if only.is_some() {
            self.only = only;
        }
        if output_path.is_some() {
            self.output_path = output_path;
        }
        if let Some(v) = format {
            self.format = v;
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "gleason-lab",
    version,
    about = "Property suite over real, complex and quaternionic Hilbert spaces"
)]
pub struct Cli {
    /// Algebras to run: R, C, H (comma separated or repeated).
    #[arg(long, value_delimiter = ',', value_parser = parse_algebra)]
    pub algebra: Vec<Algebra>,
    /// Dimensions to run (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    pub dim: Vec<usize>,
    /// Seeds to run; defaults to $GLEASON_LAB_SEED, then 1.
    #[arg(long, value_delimiter = ',')]
    pub seed: Vec<u64>,
    /// Random draws per property and cell.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Tolerance override, e.g. --tol gleason.round_trip=1e-7.
    #[arg(long = "tol", value_parser = parse_tolerance)]
    pub tol: Vec<(String, f64)>,
    /// Write the report (or the demo transcript) here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Only run properties whose name matches this glob.
    #[arg(long)]
    pub only: Option<String>,
    /// List the selected properties and exit.
    #[arg(long)]
    pub list: bool,
    /// JSON config file; flags override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Print the counterexample transcript instead of running the suite.
    #[arg(long)]
    pub demo: bool,
}

fn parse_algebra(s: &str) -> Result<Algebra, String> {
    Algebra::from_symbol(s.trim())
        .ok_or_else(|| format!("unknown algebra '{s}', expected R, C or H"))
}

fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got '{s}'"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|e| format!("bad tolerance '{v}': {e}"))?;
    Ok((k.trim().to_string(), v))
}

impl Cli {
    /// Resolve the layers into a validated config. `env_seed` is the raw value of
    /// [`SEED_ENV`], passed in so tests do not depend on the process environment.
    pub fn resolve(
        &self,
        env_seed: Option<&str>,
        file: Option<&str>,
    ) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        if let Some(s) = env_seed {
            let seed = s
                .trim()
                .parse()
                .map_err(|e| invalid(format!("{SEED_ENV}='{s}': {e}")))?;
            cfg.seeds = vec![seed];
        }
        if let Some(text) = file {
            let parsed: ConfigFile =
                serde_json::from_str(text).map_err(|e| invalid(format!("config file: {e}")))?;
            cfg.overlay(parsed);
        }
        cfg.overlay(ConfigFile {
            algebras: (!self.algebra.is_empty()).then(|| self.algebra.clone()),
            dims: (!self.dim.is_empty()).then(|| self.dim.clone()),
            seeds: (!self.seed.is_empty()).then(|| self.seed.clone()),
            trials: self.trials,
            tolerances: self.tol.iter().cloned().collect(),
            only: self.only.clone(),
            output_path: self.out.as_ref().map(|p| p.display().to_string()),
            format: self.format,
        });
        cfg.validated()
    }
}
