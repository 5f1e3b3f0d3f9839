//! Experiment configuration: an optional TOML file overlaid by flags.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{usage, CliResult};

pub const DEFAULT_TRIALS: u64 = 10_000;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExperimentConfig {
    pub experiment: Option<String>,
    pub k: Option<u32>,
    pub n: Option<usize>,
    pub family: Option<String>,
    pub predictor: Option<String>,
    pub source: Option<String>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    #[serde(default)]
    pub exact: bool,
    #[serde(default)]
    pub exact_over_predictor: bool,
    pub out: Option<PathBuf>,
    pub t: Option<usize>,
    pub m: Option<usize>,
    pub models: Option<usize>,
    pub alphabet: Option<usize>,
    pub value: Option<f64>,
    pub constraint: Option<String>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($field:ident),*) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field; } )*
    };
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> CliResult<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    /// Values set in `flags` win over values in `self`.
    pub fn overlay(mut self, flags: ExperimentConfig) -> Self {
        overlay!(self, flags; experiment, k, n, family, predictor, source, trials, seed,
            out, t, m, models, alphabet, value, constraint);
        self.exact |= flags.exact;
        self.exact_over_predictor |= flags.exact_over_predictor;
        self
    }

    pub fn trials(&self) -> u64 {
        self.trials.unwrap_or(DEFAULT_TRIALS)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    /// Resolve `k` and `n` against each other; `n = 2^k` when both are given.
    pub fn k_and_n(&self, default_k: u32) -> CliResult<(Option<u32>, usize)> {
        match (self.k, self.n) {
            (Some(k), Some(n)) => {
                if k >= 63 || n != 1usize << k {
                    return usage(format!("--k {k} and --n {n} disagree (need n = 2^k)"));
                }
                Ok((Some(k), n))
            }
            (Some(k), None) => {
                if !(1..=40).contains(&k) {
                    return usage(format!("--k {k} must lie in 1..=40"));
                }
                Ok((Some(k), 1usize << k))
            }
            (None, Some(n)) => {
                if n < 2 {
                    return usage("--n must be at least 2");
                }
                let k = n.is_power_of_two().then(|| n.trailing_zeros());
                Ok((k, n))
            }
            (None, None) => Ok((Some(default_k), 1usize << default_k)),
        }
    }

    pub fn validate_modes(&self) -> CliResult<()> {
        if self.exact && self.exact_over_predictor {
            return usage("--exact and --exact-over-predictor are mutually exclusive");
        }
        if self.trials == Some(0) {
            return usage("--trials must be positive");
        }
        Ok(())
    }
}
