use std::ops::Range;

use rayon::prelude::*;

use super::exact::exact_expected_loss;
use super::play::{play_strategy, Target};
use super::report::{TrialRecord, TrialReport};
use crate::error::{Error, Result};
use crate::game::LossKind;
use crate::predictors::Predictor;
use crate::seed::trial_rngs;
use crate::sequences::SequenceSource;

/// A source, a predictor and a scoring rule.
#[derive(Clone, Copy)]
pub struct Experiment<'a> {
    pub id: &'a str,
    pub k: Option<u32>,
    pub source: &'a dyn SequenceSource,
    pub predictor: &'a dyn Predictor,
    pub target: Target<'a>,
    pub loss: LossKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TrialMode {
    /// Sample both the sequence and the predictor's coins.
    #[default]
    Sampled,
    /// Sample the sequence, then average exactly over the predictor's coins.
    ExactOverPredictor,
}

/// Run trials `0..trials` with per-trial streams derived from `master_seed`.
pub fn monte_carlo(exp: &Experiment<'_>, trials: u64, master_seed: u64) -> Result<TrialReport> {
    monte_carlo_range(exp, 0..trials, master_seed, TrialMode::Sampled)
}

/// Run a sub-range of trials. Trial `i` depends only on `(master_seed, i)`,
/// so disjoint ranges merge into exactly the report of the full range.
pub fn monte_carlo_range(
    exp: &Experiment<'_>,
    trials: Range<u64>,
    master_seed: u64,
    mode: TrialMode,
) -> Result<TrialReport> {
    if trials.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one trial is required".into(),
        ));
    }
    if exp.source.len() != exp.predictor.horizon() {
        return Err(Error::InvalidParameter(format!(
            "source length {} differs from predictor horizon {}",
            exp.source.len(),
            exp.predictor.horizon()
        )));
    }
    let records = trials
        .into_par_iter()
        .map(|i| run_trial(exp, i, master_seed, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(TrialReport::sampled(
        exp.id,
        exp.k,
        exp.source.len(),
        master_seed,
        records,
    ))
}

fn run_trial(
    exp: &Experiment<'_>,
    i: u64,
    master_seed: u64,
    mode: TrialMode,
) -> Result<TrialRecord> {
    let (mut source_rng, mut predictor_rng) = trial_rngs(master_seed, i);
    let seq = exp.source.sample(&mut source_rng);
    let trial =
        i64::try_from(i).map_err(|_| Error::InvalidParameter("trial index too large".into()))?;
    match mode {
        TrialMode::Sampled => {
            let mut strategy = exp.predictor.start(&mut predictor_rng);
            let scale = strategy.scale();
            let result = play_strategy(&seq, strategy.as_mut(), exp.target, exp.loss)?;
            let c = result.commitment;
            Ok(TrialRecord {
                trial,
                k_prime: scale,
                t: Some(c.t()),
                m: Some(c.m()),
                predicted: Some(result.predicted),
                actual: Some(result.actual),
                loss: result.loss,
            })
        }
        TrialMode::ExactOverPredictor => Ok(TrialRecord {
            trial,
            k_prime: None,
            t: None,
            m: None,
            predicted: None,
            actual: None,
            loss: exact_expected_loss(&seq, exp.predictor, exp.target, exp.loss)?,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predictors::selective_predictor;
    use crate::sequences::{alternating, anti_concentrated_source, Fixed};
    use crate::statistics::StatisticFamily;

    #[test]
    fn ranges_merge_to_the_full_run() {
        let f = StatisticFamily::mean();
        let src = anti_concentrated_source(5).unwrap();
        let p = selective_predictor(f.clone(), 5).unwrap();
        let exp = Experiment {
            id: "mc",
            k: Some(5),
            source: &src,
            predictor: &p,
            target: Target::Statistic(&f),
            loss: LossKind::Squared,
        };
        let full = monte_carlo(&exp, 100, 7).unwrap();
        let a = monte_carlo_range(&exp, 0..40, 7, TrialMode::Sampled).unwrap();
        let b = monte_carlo_range(&exp, 40..100, 7, TrialMode::Sampled).unwrap();
        assert_eq!(b.merge(a).unwrap(), full);
        assert_eq!(monte_carlo(&exp, 100, 7).unwrap(), full);
        assert_ne!(monte_carlo(&exp, 100, 8).unwrap().records, full.records);
    }

    #[test]
    fn exact_over_predictor_on_a_fixed_source() {
        let f = StatisticFamily::mean();
        let src = Fixed::new("alt", alternating(16).unwrap());
        let p = selective_predictor(f.clone(), 4).unwrap();
        let exp = Experiment {
            id: "alt",
            k: Some(4),
            source: &src,
            predictor: &p,
            target: Target::Statistic(&f),
            loss: LossKind::Squared,
        };
        let r = monte_carlo_range(&exp, 0..3, 1, TrialMode::ExactOverPredictor).unwrap();
        assert!(r.records.iter().all(|x| (x.loss - 0.25).abs() < 1e-12));
        assert!(r.ci_half_width < 1e-12);
        assert!(monte_carlo(&exp, 0, 1).is_err());
    }
}
