//! Optional TOML configuration. Keys mirror the long flag names; a flag
//! given on the command line overrides the file.

use std::path::Path;

use serde::Deserialize;

use crate::args::{Format, Mode};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub format: Option<Format>,
    pub timings: Option<bool>,
    pub category: Option<Vec<String>>,
    pub suite: Option<Vec<String>>,
    pub max_size: Option<usize>,
    pub sizes: Option<Vec<usize>>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub enum_cap: Option<usize>,
    pub max_iterations: Option<usize>,
    pub mode: Option<Mode>,
    pub fuel: Option<u64>,
    pub sample: Option<String>,
    pub suffix: Option<String>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<FileConfig> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> Result<FileConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
