//! JSON run configuration:
//! `{"mu": [...], "a": [[re, im], ...], "grid": {"start", "end", "step"}, "seed": n}`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{GridError, GridSpec};
use crate::kernel::{ModelConfig, ModelError};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid model: {0}")]
    Model(#[from] ModelError),
    #[error("invalid grid: {0}")]
    Grid(#[from] GridError),
    #[error("invalid grid override {0:?}: expected start,end,step")]
    GridOverride(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFile {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

/// The config document as written on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub mu: Vec<f64>,
    pub a: Vec<[f64; 2]>,
    pub grid: GridFile,
    #[serde(default)]
    pub seed: u64,
}

/// A validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelConfig,
    pub grid: GridSpec,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let file: ConfigFile = serde_json::from_str(text)?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &ConfigFile) -> Result<Self, ConfigError> {
        let a = file.a.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        let model = ModelConfig::from_parts(file.mu.clone(), a)?;
        let grid = GridSpec::new(file.grid.start, file.grid.end, file.grid.step)?;
        Ok(Self {
            model,
            grid,
            seed: file.seed,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Replaces the grid with `start,end,step`.
    pub fn override_grid(&mut self, spec: &str) -> Result<(), ConfigError> {
        let parts: Vec<f64> = spec
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| ConfigError::GridOverride(spec.to_string()))?;
        let [start, end, step] = parts[..] else {
            return Err(ConfigError::GridOverride(spec.to_string()));
        };
        self.grid = GridSpec::new(start, end, step)?;
        Ok(())
    }

    pub fn to_file(&self) -> ConfigFile {
        ConfigFile {
            mu: self.model.mu().to_vec(),
            a: self.model.a().iter().map(|z| [z.re, z.im]).collect(),
            grid: GridFile {
                start: self.grid.start,
                end: self.grid.end,
                step: self.grid.step,
            },
            seed: self.seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_stock_config() {
        let cfg = RunConfig::from_json(
            r#"{"mu": [3, 2, 1], "a": [[1, 2], [1, 0], [0, 1]],
                "grid": {"start": 0, "end": 10, "step": 0.01}, "seed": 7}"#,
        )
        .unwrap();
        assert_eq!(cfg.model.n(), 3);
        assert_eq!(cfg.model.a()[0], Complex64::new(1.0, 2.0));
        assert_eq!(cfg.grid.len(), 1001);
        assert_eq!(cfg.seed, 7);
        assert_eq!(RunConfig::from_file(&cfg.to_file()).unwrap(), cfg);
    }

    #[test]
    fn names_violated_invariant() {
        let err = RunConfig::from_json(
            r#"{"mu": [2, 1], "a": [[1, 0], [-1, 0]], "grid": {"start": 0, "end": 1, "step": 0.1}}"#,
        )
        .unwrap_err();
        assert_eq!(err.to_string(), "invalid model: Re(a_2) < 0");
        let err = RunConfig::from_json(r#"{"mu": [2, 1], "a": [[1, 0]]"#).unwrap_err();
        assert!(err.to_string().contains("line 1"));
        let err = RunConfig::from_json(
            r#"{"mu": [1], "a": [[1, 0]], "grid": {"start": -1, "end": 1, "step": 0.1}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, ConfigError::Grid(_)));
    }

    #[test]
    fn grid_override() {
        let mut cfg = RunConfig::from_json(
            r#"{"mu": [1], "a": [[1, 0]], "grid": {"start": 0, "end": 1, "step": 0.1}}"#,
        )
        .unwrap();
        cfg.override_grid("0,5,0.5").unwrap();
        assert_eq!(cfg.grid.len(), 11);
        assert!(cfg.override_grid("0,5").is_err());
        assert!(cfg.override_grid("a,b,c").is_err());
    }
}
