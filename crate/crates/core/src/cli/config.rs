//! Versioned JSON configuration shared by all subcommands.
//!
//! Every field is optional. A value given on the command line overrides the
//! file, and the file overrides the built-in default.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default)]
    pub gh: GhSection,
    #[serde(default)]
    pub space: SpaceSection,
    #[serde(default)]
    pub bench: BenchSection,
    #[serde(default)]
    pub search: SearchSection,
    #[serde(default)]
    pub diag: DiagSection,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GhSection {
    pub quadrature_res: Option<usize>,
    pub grid_step: Option<f64>,
    pub res_r: Option<usize>,
    pub res_t: Option<usize>,
    pub sphere_res: Option<usize>,
    pub offset_steps: Option<usize>,
    pub offset_range: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSection {
    pub max_factors: Option<usize>,
    pub fixed_size: Option<usize>,
    pub variant: Option<String>,
    pub weights: Option<String>,
    pub gh_table: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchSection {
    pub factors: Option<usize>,
    pub truth: Option<String>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub methods: Option<Vec<String>>,
    pub budget: Option<usize>,
    pub seeds: Option<Vec<u64>>,
    pub n_init: Option<usize>,
    pub beta_min: Option<f64>,
    pub beta_max: Option<f64>,
    pub beta_count: Option<usize>,
    pub noise_variance: Option<f64>,
    pub freeze_beta: Option<bool>,
    pub stop_value: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagSection {
    pub samples: Option<usize>,
    pub size: Option<usize>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn empty() -> Self {
        Self { schema_version: SCHEMA_VERSION, ..Default::default() }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(s)?;
        if c.schema_version != SCHEMA_VERSION {
            return Err(Error::Invalid(format!(
                "unsupported config schema_version {} (expected {SCHEMA_VERSION})",
                c.schema_version
            )));
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

/// `flag`, else `file`, else `default`.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}
