//! Name-based construction of sources, predictors, statistic families and
//! experiment presets.

use std::sync::Arc;

use selpred::engine::Target;
use selpred::predictors::{
    constrained_predictor, erm_predictor, selective_predictor, wrap_general_length,
    ConstrainedKind, Predictor, SelectivePredictor,
};
use selpred::seed::{rng_from_seed, trial_seed};
use selpred::sequences::{
    alternating, anti_concentrated_source, block_adversary, constant, erm_hard_instance,
    fixed_time_adversary, halving_block_adversary, Fixed, IidBits, IidReals, IidSymbols,
    SequenceSource,
};
use selpred::statistics::{
    abs_deviation_family, emd_to_reference_family, learnability_family, square_mean_family,
    ModelClass, StatisticFamily,
};
use selpred::LossKind;

use crate::check::Relation;
use crate::config::ExperimentConfig;
use crate::error::{usage, CliResult};

pub const SOURCES: &[&str] = &[
    "anti-concentrated",
    "alternating",
    "constant",
    "iid-bits",
    "iid-reals",
    "iid-symbols",
    "fixed-time",
    "block",
    "halving-block",
    "erm-hard",
];
pub const PREDICTORS: &[&str] = &[
    "selective",
    "erm",
    "fixed-time",
    "fixed-window",
    "tail-window",
];
pub const FAMILIES: &[&str] = &[
    "mean",
    "square-mean",
    "abs-deviation",
    "emd-ref",
    "learnability",
];
pub const EXPERIMENTS: &[&str] = &[
    "mean-upper",
    "mean-lower",
    "smooth-upper",
    "concave-upper",
    "erm-upper",
    "erm-lower",
    "selectivity",
];

pub const DEFAULT_MODELS: usize = 8;
pub const DEFAULT_ALPHABET: usize = 4;

/// Eight evenly spaced points; the reference sample of the `emd-ref` family.
pub fn emd_reference() -> Vec<f64> {
    (0..8).map(|i| (f64::from(i) + 0.5) / 8.0).collect()
}

/// Trial index reserved for drawing a random model class, so the class never
/// shares a stream with any game.
const CLASS_STREAM: u64 = u64::MAX;

pub fn random_class(models: usize, alphabet: usize, seed: u64) -> CliResult<ModelClass> {
    let mut rng = rng_from_seed(trial_seed(seed, CLASS_STREAM));
    Ok(ModelClass::random(models, alphabet, &mut rng)?)
}

/// Everything an experiment needs, resolved from names.
pub struct Components {
    pub experiment: String,
    pub k: Option<u32>,
    pub n: usize,
    pub source: Box<dyn SequenceSource>,
    pub predictor: Box<dyn Predictor>,
    pub family: Option<StatisticFamily>,
    pub class: Option<Arc<ModelClass>>,
    pub loss: LossKind,
    pub bound: Bound,
    /// Resolved settings, echoed into output headers.
    pub settings: Vec<(String, String)>,
}

impl Components {
    pub fn target(&self) -> Target<'_> {
        match (&self.family, &self.class) {
            (Some(f), _) => Target::Statistic(f),
            (None, Some(c)) => Target::Models(c),
            (None, None) => unreachable!("components always carry a target"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bound {
    pub value: f64,
    pub relation: Relation,
    pub formula: &'static str,
}

fn log2_floor(n: usize) -> u32 {
    usize::BITS - 1 - n.leading_zeros()
}

fn pick<'a>(
    given: &'a Option<String>,
    default: &'a str,
    allowed: &[&str],
    what: &str,
) -> CliResult<&'a str> {
    let name = given.as_deref().unwrap_or(default);
    if !allowed.contains(&name) {
        return usage(format!(
            "unknown {what} '{name}' (expected one of {})",
            allowed.join(", ")
        ));
    }
    Ok(name)
}

pub fn build_family(name: &str) -> CliResult<StatisticFamily> {
    Ok(match name {
        "mean" => StatisticFamily::mean(),
        "square-mean" => square_mean_family(),
        "abs-deviation" => abs_deviation_family(),
        "emd-ref" => emd_to_reference_family(emd_reference())?,
        other => return usage(format!("family '{other}' needs a model class")),
    })
}

fn selective(family: StatisticFamily, n: usize) -> CliResult<Box<dyn Predictor>> {
    if n.is_power_of_two() {
        Ok(Box::new(SelectivePredictor::for_length(family, n)?))
    } else {
        let inner = selective_predictor(family, log2_floor(n))?;
        Ok(Box::new(wrap_general_length(inner, n)?))
    }
}

/// Resolve a configuration into runnable components.
pub fn resolve(cfg: &ExperimentConfig) -> CliResult<Components> {
    let experiment = pick(&cfg.experiment, "mean-upper", EXPERIMENTS, "experiment")?.to_string();
    let default_k = if experiment == "erm-lower" { 3 } else { 10 };
    let (k, n) = cfg.k_and_n(default_k)?;
    let k_eff = log2_floor(n);
    let seed = cfg.seed();

    let (default_source, default_predictor, default_family, loss) = match experiment.as_str() {
        "mean-upper" | "mean-lower" => {
            ("anti-concentrated", "selective", "mean", LossKind::Squared)
        }
        "smooth-upper" => (
            "anti-concentrated",
            "selective",
            "square-mean",
            LossKind::Absolute,
        ),
        "concave-upper" => (
            "iid-symbols",
            "selective",
            "learnability",
            LossKind::Squared,
        ),
        "erm-upper" => ("iid-symbols", "erm", "learnability", LossKind::ExcessRisk),
        "erm-lower" => ("erm-hard", "erm", "learnability", LossKind::ExcessRisk),
        _ => ("fixed-time", "fixed-time", "mean", LossKind::Squared),
    };
    let predictor_name = pick(&cfg.predictor, default_predictor, PREDICTORS, "predictor")?;
    let source_default = if experiment == "selectivity" {
        match predictor_name {
            "fixed-window" => "block",
            "tail-window" => "halving-block",
            _ => "fixed-time",
        }
    } else {
        default_source
    };
    let source_name = pick(&cfg.source, source_default, SOURCES, "source")?;
    let family_name = pick(&cfg.family, default_family, FAMILIES, "family")?;
    let models = cfg.models.unwrap_or(DEFAULT_MODELS);
    let alphabet = cfg.alphabet.unwrap_or(DEFAULT_ALPHABET);
    let t = cfg.t.unwrap_or(n / 2);
    let m = cfg.m.unwrap_or((n / 2).max(1));

    let mut class: Option<Arc<ModelClass>> = None;
    let source: Box<dyn SequenceSource> = match source_name {
        "anti-concentrated" => match k {
            Some(k) => Box::new(anti_concentrated_source(k)?),
            None => return usage("anti-concentrated sources need n = 2^k"),
        },
        "alternating" => Box::new(Fixed::new("alternating", alternating(n)?)),
        "constant" => Box::new(Fixed::new(
            "constant",
            constant(n, cfg.value.unwrap_or(0.5))?,
        )),
        "iid-bits" => Box::new(IidBits::new(n)?),
        "iid-reals" => Box::new(IidReals::new(n)?),
        "iid-symbols" => Box::new(IidSymbols::new(n, alphabet)?),
        "fixed-time" => Box::new(fixed_time_adversary(n, t)?),
        "block" => Box::new(block_adversary(n, m)?),
        "halving-block" => Box::new(halving_block_adversary(n)?),
        _ => {
            let Some(k) = k else {
                return usage("erm-hard needs n = 2^k");
            };
            let (hard, seq) = erm_hard_instance(k)?;
            class = Some(Arc::new(hard));
            Box::new(Fixed::new("erm-hard", seq))
        }
    };

    let symbolic = matches!(source_name, "iid-symbols" | "erm-hard");
    let mut family = None;
    if family_name == "learnability" || predictor_name == "erm" {
        if !symbolic {
            return usage(format!(
                "{family_name}/{predictor_name} needs a symbol source"
            ));
        }
        let c = match class.take() {
            Some(c) => c,
            None => Arc::new(random_class(models, alphabet, seed)?),
        };
        if predictor_name != "erm" {
            family = Some(learnability_family(c.clone()));
        }
        class = Some(c);
    } else if symbolic {
        return usage(format!(
            "source '{source_name}' produces symbols; use the learnability family"
        ));
    } else {
        family = Some(build_family(family_name)?);
    }

    let predictor: Box<dyn Predictor> = match predictor_name {
        "selective" => selective(
            family
                .clone()
                .ok_or_else(|| crate::error::CliError::Usage("selective needs a family".into()))?,
            n,
        )?,
        "erm" => {
            if loss != LossKind::ExcessRisk {
                return usage(
                    "the erm predictor is scored by excess risk (erm-upper or erm-lower)",
                );
            }
            let Some(k) = k else {
                return usage("erm needs n = 2^k");
            };
            Box::new(erm_predictor(
                class.clone().expect("class resolved above"),
                k,
            )?)
        }
        "fixed-time" => Box::new(constrained_predictor(ConstrainedKind::FixedTime(t), n)?),
        "fixed-window" => Box::new(constrained_predictor(ConstrainedKind::FixedWindow(m), n)?),
        _ => Box::new(constrained_predictor(ConstrainedKind::TailWindow, n)?),
    };
    if loss == LossKind::ExcessRisk && predictor_name != "erm" {
        return usage(format!("{experiment} needs the erm predictor"));
    }
    if loss != LossKind::ExcessRisk {
        class = None;
    }

    let kf = f64::from(k_eff);
    let bound = match experiment.as_str() {
        "mean-upper" => Bound {
            value: 1.0 / kf,
            relation: Relation::AtMost,
            formula: "1/k",
        },
        "mean-lower" => Bound {
            value: 1.0 / (64.0 * kf),
            relation: Relation::AtLeast,
            formula: "1/(64k)",
        },
        "smooth-upper" => {
            let l = family
                .as_ref()
                .and_then(StatisticFamily::smoothness)
                .ok_or_else(|| {
                    crate::error::CliError::Usage(format!(
                        "family '{family_name}' has no smoothness constant"
                    ))
                })?;
            Bound {
                value: l / kf.sqrt(),
                relation: Relation::AtMost,
                formula: "L/sqrt(k)",
            }
        }
        "concave-upper" => Bound {
            value: 4.0 / kf,
            relation: Relation::AtMost,
            formula: "4/k",
        },
        "erm-upper" => {
            let size = class.as_ref().map_or(models, |c| c.size()) as f64;
            Bound {
                value: 2.0 * (size / kf).sqrt(),
                relation: Relation::AtMost,
                formula: "2*sqrt(|L|/k)",
            }
        }
        "erm-lower" => Bound {
            value: 0.125,
            relation: Relation::AtLeast,
            formula: "1/8",
        },
        _ => {
            if predictor_name == "fixed-time" {
                Bound {
                    value: 0.25,
                    relation: Relation::AtLeast,
                    formula: "1/4",
                }
            } else {
                Bound {
                    value: 1.0 / 64.0,
                    relation: Relation::AtLeast,
                    formula: "1/64",
                }
            }
        }
    };

    let mut settings = vec![
        ("experiment".to_string(), experiment.clone()),
        (
            "k".to_string(),
            k.map_or_else(String::new, |k| k.to_string()),
        ),
        ("n".to_string(), n.to_string()),
        ("source".to_string(), source.name()),
        ("predictor".to_string(), predictor.name()),
        ("loss".to_string(), loss.name().to_string()),
        (
            "bound".to_string(),
            format!(
                "{} {} = {}",
                bound.relation.symbol(),
                bound.formula,
                bound.value
            ),
        ),
    ];
    if let Some(f) = &family {
        settings.push(("family".to_string(), f.name().to_string()));
    }
    if let Some(c) = &class {
        settings.push(("models".to_string(), c.size().to_string()));
        settings.push(("alphabet".to_string(), c.alphabet().to_string()));
    }

    Ok(Components {
        experiment,
        k,
        n,
        source,
        predictor,
        family,
        class,
        loss,
        bound,
        settings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(experiment: &str) -> ExperimentConfig {
        ExperimentConfig {
            experiment: Some(experiment.into()),
            k: Some(4),
            ..Default::default()
        }
    }

    #[test]
    fn presets_resolve() {
        for e in EXPERIMENTS {
            let c = resolve(&cfg(e)).unwrap_or_else(|err| panic!("{e}: {err}"));
            assert_eq!(c.source.len(), c.predictor.horizon(), "{e}");
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(resolve(&cfg("mean-upper")).unwrap().bound.value, 0.25);
        assert_eq!(
            resolve(&cfg("mean-lower")).unwrap().bound.value,
            1.0 / 256.0
        );
        let s = resolve(&cfg("smooth-upper")).unwrap();
        assert_eq!(s.bound.value, 1.0);
        let mut c = cfg("selectivity");
        c.predictor = Some("tail-window".into());
        let r = resolve(&c).unwrap();
        assert_eq!(r.bound.value, 1.0 / 64.0);
        assert!(r.source.name().contains("halving"));
    }

    #[test]
    fn unknown_and_mismatched_names() {
        let mut c = cfg("mean-upper");
        c.source = Some("nope".into());
        assert!(matches!(resolve(&c), Err(crate::error::CliError::Usage(_))));
        let mut c = cfg("mean-upper");
        c.source = Some("iid-symbols".into());
        assert!(resolve(&c).is_err());
        let mut c = cfg("mean-upper");
        c.predictor = Some("erm".into());
        assert!(resolve(&c).is_err());
    }

    #[test]
    fn general_length_is_wrapped() {
        let c = ExperimentConfig {
            experiment: Some("mean-upper".into()),
            n: Some(12),
            source: Some("alternating".into()),
            ..Default::default()
        };
        let r = resolve(&c).unwrap();
        assert_eq!(r.predictor.horizon(), 12);
        assert_eq!(r.bound.value, 1.0 / 3.0);
    }
}
