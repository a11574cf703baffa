//! JSON experiment configuration: parsing, validation, and translation into
//! core types. Flags override file fields; the seed is either explicit or
//! derived from the config bytes so every run is reproducible.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use sha2::{Digest, Sha256};

use avote_core::density::DensityModel;
use avote_core::error::{Error, Result};
use avote_core::rules::{RuleKind, VotingRule};
use avote_core::simplex::{AnchorParams, SimplexPoint};
use avote_core::welfare::{DeltaMode, TieMode, DEFAULT_BUDGET};

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DensitySpec {
    Uniform,
    Dirichlet {
        theta: Vec<f64>,
    },
    Mixture {
        weights: Vec<f64>,
        components: Vec<DensitySpec>,
    },
}

impl DensitySpec {
    pub fn build(&self, m: usize) -> Result<DensityModel> {
        match self {
            DensitySpec::Uniform => DensityModel::uniform(m),
            DensitySpec::Dirichlet { theta } => {
                if theta.len() != m {
                    return Err(Error::InvalidInput(format!(
                        "density.theta has {} entries, m is {m}",
                        theta.len()
                    )));
                }
                DensityModel::dirichlet(theta.clone())
            }
            DensitySpec::Mixture {
                weights,
                components,
            } => {
                let built: Result<Vec<_>> = components.iter().map(|c| c.build(m)).collect();
                DensityModel::mixture(weights.clone(), built?)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleSpec {
    Plurality,
    Borda,
    Veto,
    Copeland,
    Irv,
}

impl RuleSpec {
    pub fn kind(self) -> RuleKind {
        match self {
            RuleSpec::Plurality => RuleKind::Plurality,
            RuleSpec::Borda => RuleKind::Borda,
            RuleSpec::Veto => RuleKind::Veto,
            RuleSpec::Copeland => RuleKind::Copeland,
            RuleSpec::Irv => RuleKind::Irv,
        }
    }
}

/// A single anchor strength or a sweep over several.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnchorSpec {
    pub w: Vec<f64>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub alpha_sweep: Option<Vec<f64>>,
}

impl AnchorSpec {
    pub fn alphas(&self) -> Result<Vec<f64>> {
        match (&self.alpha, &self.alpha_sweep) {
            (Some(a), None) => Ok(vec![*a]),
            (None, Some(v)) => {
                if v.is_empty() {
                    Err(Error::InvalidInput("anchor.alpha_sweep is empty".into()))
                } else {
                    Ok(v.clone())
                }
            }
            (Some(_), Some(_)) => Err(Error::InvalidInput(
                "anchor: give alpha or alpha_sweep, not both".into(),
            )),
            (None, None) => Err(Error::InvalidInput(
                "anchor: one of alpha or alpha_sweep is required".into(),
            )),
        }
    }

    pub fn params(&self, alpha: f64) -> Result<AnchorParams> {
        let w = SimplexPoint::new(self.w.clone()).map_err(|e| match e {
            Error::InvalidInput(msg) => Error::InvalidInput(format!("anchor.w: {msg}")),
            other => other,
        })?;
        AnchorParams::new(w, alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaModeSpec {
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieModeSpec {
    Expected,
    Sampled,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub density: DensitySpec,
    pub rule: RuleSpec,
    pub m: usize,
    pub n: u64,
    #[serde(default)]
    pub anchor: Option<AnchorSpec>,
    #[serde(default)]
    pub samples: Option<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub budget: Option<u128>,
    #[serde(default)]
    pub delta_mode: Option<DeltaModeSpec>,
    #[serde(default)]
    pub tie_mode: Option<TieModeSpec>,
    #[serde(default)]
    pub out: Option<PathBuf>,
}

/// Config plus everything resolved: effective seed, sample count, budget,
/// and the hex hash of the raw config bytes for output headers.
#[derive(Debug, Clone)]
pub struct ResolvedConfig {
    pub config: ExperimentConfig,
    pub config_hash: String,
    pub seed: u64,
    pub samples: u64,
    pub budget: u128,
}

pub const DEFAULT_SAMPLES: u64 = 100_000;

pub fn load_config(path: &Path, seed_flag: Option<u64>, samples_flag: Option<u64>) -> Result<ResolvedConfig> {
    let bytes = std::fs::read(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let config: ExperimentConfig = serde_json::from_slice(&bytes)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    validate(&config)?;
    let config_hash = hex16(&bytes);
    let seed = seed_flag
        .or(config.seed)
        .unwrap_or_else(|| derived_seed(&bytes));
    let samples = samples_flag.or(config.samples).unwrap_or(DEFAULT_SAMPLES);
    let budget = config.budget.unwrap_or(DEFAULT_BUDGET);
    Ok(ResolvedConfig {
        config,
        config_hash,
        seed,
        samples,
        budget,
    })
}

fn validate(config: &ExperimentConfig) -> Result<()> {
    if config.m < 2 {
        return Err(Error::InvalidInput(format!("m must be >= 2, got {}", config.m)));
    }
    if config.n == 0 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    if let Some(anchor) = &config.anchor {
        if anchor.w.len() != config.m {
            return Err(Error::InvalidInput(format!(
                "anchor.w has {} entries, m is {}",
                anchor.w.len(),
                config.m
            )));
        }
        for alpha in anchor.alphas()? {
            anchor.params(alpha)?;
        }
    }
    if let Some(s) = config.samples {
        if s == 0 {
            return Err(Error::InvalidInput("samples must be >= 1".into()));
        }
    }
    Ok(())
}

impl ResolvedConfig {
    pub fn density(&self) -> Result<DensityModel> {
        self.config.density.build(self.config.m)
    }

    pub fn rule(&self) -> Result<VotingRule> {
        VotingRule::new(self.config.rule.kind(), self.config.m)
    }

    pub fn anchor(&self) -> Result<&AnchorSpec> {
        self.config.anchor.as_ref().ok_or_else(|| {
            Error::InvalidInput("this command needs an anchor (w, alpha) in the config".into())
        })
    }

    pub fn delta_mode(&self) -> DeltaMode {
        match self.config.delta_mode {
            Some(DeltaModeSpec::MonteCarlo) => DeltaMode::MonteCarlo,
            _ => DeltaMode::Exact,
        }
    }

    pub fn tie_mode(&self) -> TieMode {
        match self.config.tie_mode {
            Some(TieModeSpec::Sampled) => TieMode::Sampled,
            _ => TieMode::Expected,
        }
    }
}

fn hex16(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// First eight digest bytes, little endian, when no seed is given anywhere.
fn derived_seed(bytes: &[u8]) -> u64 {
    let digest = Sha256::digest(bytes);
    u64::from_le_bytes(digest[..8].try_into().expect("digest is long enough"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_config(json: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(json.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_minimal_config() {
        let f = write_config(
            r#"{"density": {"kind": "uniform"}, "rule": "plurality", "m": 3, "n": 5}"#,
        );
        let rc = load_config(f.path(), None, None).unwrap();
        assert_eq!(rc.samples, DEFAULT_SAMPLES);
        assert_eq!(rc.config_hash.len(), 16);
        // no seed anywhere: derived from the bytes, stable across loads
        let rc2 = load_config(f.path(), None, None).unwrap();
        assert_eq!(rc.seed, rc2.seed);
    }

    #[test]
    fn flag_overrides_config_seed() {
        let f = write_config(
            r#"{"density": {"kind": "uniform"}, "rule": "borda", "m": 3, "n": 4, "seed": 7}"#,
        );
        assert_eq!(load_config(f.path(), None, None).unwrap().seed, 7);
        assert_eq!(load_config(f.path(), Some(9), None).unwrap().seed, 9);
    }

    #[test]
    fn rejects_bad_anchor() {
        let f = write_config(
            r#"{"density": {"kind": "uniform"}, "rule": "plurality", "m": 3, "n": 5,
                "anchor": {"w": [0.5, 0.4], "alpha": 0.2}}"#,
        );
        assert!(load_config(f.path(), None, None).is_err());
        let f = write_config(
            r#"{"density": {"kind": "uniform"}, "rule": "plurality", "m": 3, "n": 5,
                "anchor": {"w": [0.5, 0.3, 0.1], "alpha": 0.2}}"#,
        );
        assert!(load_config(f.path(), None, None).is_err()); // sums to 0.9
    }

    #[test]
    fn rejects_unknown_fields_with_position() {
        let f = write_config(
            r#"{"density": {"kind": "uniform"}, "rule": "plurality", "m": 3, "n": 5, "typo": 1}"#,
        );
        let err = load_config(f.path(), None, None).unwrap_err().to_string();
        assert!(err.contains("typo") && err.contains("line"), "{err}");
    }

    #[test]
    fn dirichlet_dimension_must_match() {
        let f = write_config(
            r#"{"density": {"kind": "dirichlet", "theta": [2.0, 1.0]}, "rule": "plurality", "m": 3, "n": 5}"#,
        );
        let rc = load_config(f.path(), None, None).unwrap();
        assert!(rc.density().is_err());
    }

    #[test]
    fn alpha_sweep_exclusive() {
        let spec = AnchorSpec {
            w: vec![0.5, 0.3, 0.2],
            alpha: Some(0.1),
            alpha_sweep: Some(vec![0.0, 0.1]),
        };
        assert!(spec.alphas().is_err());
        let spec = AnchorSpec {
            w: vec![0.5, 0.3, 0.2],
            alpha: None,
            alpha_sweep: Some(vec![0.0, 0.1, 0.2]),
        };
        assert_eq!(spec.alphas().unwrap(), vec![0.0, 0.1, 0.2]);
    }
}
