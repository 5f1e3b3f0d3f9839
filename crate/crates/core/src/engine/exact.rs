use super::play::{check_horizon, play_strategy, Target};
use super::report::{TrialRecord, TrialReport};
use crate::error::{Error, Result};
use crate::game::{GameResult, LossKind, Sequence};
use crate::predictors::Predictor;
use crate::sequences::SequenceSource;

/// One element of a predictor's randomness support, played out.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedGame {
    pub result: GameResult,
    pub probability: f64,
    pub scale: Option<u32>,
}

/// Play every strategy in the predictor's support against `seq`.
pub fn exact_games(
    seq: &Sequence,
    predictor: &dyn Predictor,
    target: Target<'_>,
    loss: LossKind,
) -> Result<Vec<WeightedGame>> {
    check_horizon(seq, predictor)?;
    let support = predictor
        .support()
        .ok_or_else(|| Error::MissingSupport(predictor.name()))?;
    support
        .into_iter()
        .map(|(mut strategy, probability)| {
            let result = play_strategy(seq, strategy.as_mut(), target, loss)?;
            Ok(WeightedGame {
                result,
                probability,
                scale: strategy.scale(),
            })
        })
        .collect()
}

/// Expected loss over the predictor's internal randomness on a fixed sequence.
pub fn exact_expected_loss(
    seq: &Sequence,
    predictor: &dyn Predictor,
    target: Target<'_>,
    loss: LossKind,
) -> Result<f64> {
    check_horizon(seq, predictor)?;
    let support = predictor
        .support()
        .ok_or_else(|| Error::MissingSupport(predictor.name()))?;
    let mut total = 0.0;
    for (mut strategy, p) in support {
        total += p * play_strategy(seq, strategy.as_mut(), target, loss)?.loss;
    }
    Ok(total)
}

/// Double expectation: outer over the source's enumerated outcomes, inner
/// over the predictor's support.
pub fn exact_expected_loss_over_source(
    source: &dyn SequenceSource,
    predictor: &dyn Predictor,
    target: Target<'_>,
    loss: LossKind,
) -> Result<f64> {
    let mut total = 0.0;
    for (seq, p) in source.enumerate()? {
        total += p * exact_expected_loss(&seq, predictor, target, loss)?;
    }
    Ok(total)
}

/// Exact report over source outcomes and predictor support, one
/// probability-weighted row per (outcome, strategy) pair.
pub fn exact_report(
    experiment: &str,
    k: Option<u32>,
    source: &dyn SequenceSource,
    predictor: &dyn Predictor,
    target: Target<'_>,
    loss: LossKind,
) -> Result<TrialReport> {
    let mut records = Vec::new();
    for (seq, p_seq) in source.enumerate()? {
        for game in exact_games(&seq, predictor, target, loss)? {
            let weight = p_seq * game.probability;
            let c = game.result.commitment;
            records.push(TrialRecord {
                trial: -1,
                k_prime: game.scale,
                t: Some(c.t()),
                m: Some(c.m()),
                predicted: Some(game.result.predicted),
                actual: Some(game.result.actual),
                loss: weight * game.result.loss,
            });
        }
    }
    Ok(TrialReport::exact(experiment, k, source.len(), 0, records))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::predictors::{
        constrained_predictor, erm_predictor, selective_predictor, ConstrainedKind,
    };
    use crate::sequences::{alternating, constant, erm_hard_instance, fixed_time_adversary, Fixed};
    use crate::statistics::StatisticFamily;

    #[test]
    fn alternating_is_exactly_one_over_k() {
        let f = StatisticFamily::mean();
        for k in 1..=10 {
            let p = selective_predictor(f.clone(), k).unwrap();
            let seq = alternating(1 << k).unwrap();
            let e =
                exact_expected_loss(&seq, &p, Target::Statistic(&f), LossKind::Squared).unwrap();
            assert!((e - 1.0 / f64::from(k)).abs() < 1e-12, "k={k} e={e}");
        }
    }

    #[test]
    fn constant_is_exactly_zero() {
        let f = StatisticFamily::mean();
        let p = selective_predictor(f.clone(), 6).unwrap();
        let seq = constant(64, 0.37).unwrap();
        let e = exact_expected_loss(&seq, &p, Target::Statistic(&f), LossKind::Squared).unwrap();
        assert!(e.abs() < 1e-15);
    }

    #[test]
    fn hard_erm_instance_pays_at_least_an_eighth() {
        let (class, seq) = erm_hard_instance(3).unwrap();
        let p = erm_predictor(Arc::new(class.clone()), 3).unwrap();
        let e =
            exact_expected_loss(&seq, &p, Target::Models(&class), LossKind::ExcessRisk).unwrap();
        assert!(e >= 0.125, "{e}");
    }

    #[test]
    fn missing_support_is_rejected() {
        struct Opaque;
        impl Predictor for Opaque {
            fn name(&self) -> String {
                "opaque".into()
            }
            fn horizon(&self) -> usize {
                2
            }
            fn start(
                &self,
                _rng: &mut dyn rand::RngCore,
            ) -> Box<dyn crate::predictors::Strategy + '_> {
                unimplemented!()
            }
        }
        let f = StatisticFamily::mean();
        let seq = alternating(2).unwrap();
        assert!(matches!(
            exact_expected_loss(&seq, &Opaque, Target::Statistic(&f), LossKind::Squared),
            Err(Error::MissingSupport(_))
        ));
    }

    #[test]
    fn fixed_time_witness_against_its_adversary() {
        // Prefix is all zeros, so the witness predicts 0 and loses 1 half the time.
        let f = StatisticFamily::mean();
        let p = constrained_predictor(ConstrainedKind::FixedTime(2), 4).unwrap();
        let adv = fixed_time_adversary(4, 2).unwrap();
        let e = exact_expected_loss_over_source(&adv, &p, Target::Statistic(&f), LossKind::Squared)
            .unwrap();
        assert!((e - 0.5).abs() < 1e-15);
        let seq = Sequence::real(vec![0.0, 0.0, 1.0, 1.0]).unwrap();
        let g = exact_games(&seq, &p, Target::Statistic(&f), LossKind::Squared).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].result.loss, 1.0);
    }

    #[test]
    fn exact_report_sums_to_expectation() {
        let f = StatisticFamily::mean();
        let p = selective_predictor(f.clone(), 3).unwrap();
        let src = Fixed::new("alt", alternating(8).unwrap());
        let r = exact_report(
            "alt",
            Some(3),
            &src,
            &p,
            Target::Statistic(&f),
            LossKind::Squared,
        )
        .unwrap();
        assert_eq!(r.records.len(), 7);
        assert!(r.records.iter().all(|x| x.trial == -1));
        assert!((r.mean - 1.0 / 3.0).abs() < 1e-12);
    }
}
