use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Dot,
    Both,
}

/// Run-wide knobs. Every field has a default, so a config file may list any subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub max_dim: usize,
    pub max_group_order: usize,
    pub oracle_dim_cap: usize,
    pub output_format: OutputFormat,
    /// Random endomorphisms tried per split attempt before giving up.
    pub decompose_tries: usize,
    /// Hom spaces with at most this many elements are searched exhaustively by iso_test.
    pub iso_exhaustive_limit: u64,
    /// Random samples tried by iso_test above the exhaustive limit.
    pub iso_samples: usize,
    /// Refinement sweeps over the section schedule per tuning attempt.
    pub tuning_rounds: usize,
    /// Independent seeds tried before reporting a tuning conflict.
    pub tuning_attempts: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            seed: 0,
            max_dim: 512,
            max_group_order: 4096,
            oracle_dim_cap: 6,
            output_format: OutputFormat::Json,
            decompose_tries: 64,
            iso_exhaustive_limit: 4096,
            iso_samples: 256,
            tuning_rounds: 6,
            tuning_attempts: 8,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("max_dim", self.max_dim),
            ("max_group_order", self.max_group_order),
            ("oracle_dim_cap", self.oracle_dim_cap),
            ("decompose_tries", self.decompose_tries),
            ("iso_samples", self.iso_samples),
            ("tuning_rounds", self.tuning_rounds),
            ("tuning_attempts", self.tuning_attempts),
        ];
        if let Some((name, _)) = caps.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Invalid(format!("config: {name} must be positive")));
        }
        if self.oracle_dim_cap > 10 {
            return Err(Error::Invalid("config: oracle_dim_cap must be at most 10".into()));
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Invalid(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let cfg = Config::from_toml("seed = 7\noutput_format = \"both\"\n").unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.output_format, OutputFormat::Both);
        assert_eq!(cfg.max_dim, 512);
    }

    #[test]
    fn rejects_bad_caps() {
        assert!(Config::from_toml("oracle_dim_cap = 11").is_err());
        assert!(Config::from_toml("max_dim = 0").is_err());
        assert!(Config::from_toml("bogus = 1").is_err());
    }
}
