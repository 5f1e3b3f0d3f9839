use rand::RngCore;

use crate::error::{Error, Result};
use crate::game::{Commitment, GameResult, LossKind, Payload, Sequence};
use crate::predictors::{Decision, Predictor, Strategy};
use crate::statistics::{ModelClass, StatisticFamily};

/// What commitments are scored against.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    /// Value predictions of a statistic family.
    Statistic(&'a StatisticFamily),
    /// Model predictions scored by excess risk within a model class.
    Models(&'a ModelClass),
}

fn score(seq: &Sequence, c: Commitment, target: Target<'_>, kind: LossKind) -> Result<GameResult> {
    let window = seq.window(c.window());
    let (predicted, actual) = match (c.payload(), target, kind) {
        (Payload::Value(v), Target::Statistic(f), LossKind::Squared | LossKind::Absolute) => {
            (v, f.eval(window)?)
        }
        (Payload::Model(i), Target::Models(class), LossKind::ExcessRisk) => {
            let losses = class.average_losses(window.as_symbols()?)?;
            let chosen = *losses.get(i).ok_or_else(|| {
                Error::ProtocolViolation(format!(
                    "model index {i} outside a class of {}",
                    class.size()
                ))
            })?;
            (chosen, losses.into_iter().fold(f64::INFINITY, f64::min))
        }
        (Payload::Value(_), _, LossKind::ExcessRisk) => {
            return Err(Error::LossMismatch {
                loss: "excess-risk",
                payload: "value",
            })
        }
        (Payload::Model(_), _, LossKind::Squared | LossKind::Absolute) => {
            return Err(Error::LossMismatch {
                loss: kind.name(),
                payload: "model",
            })
        }
        (Payload::Value(_), Target::Models(_), _)
        | (Payload::Model(_), Target::Statistic(_), _) => {
            return Err(Error::InvalidParameter(
                "value predictions need a statistic target, model predictions a model class".into(),
            ))
        }
    };
    Ok(GameResult {
        commitment: c,
        kind,
        predicted,
        actual,
        loss: kind.apply(predicted, actual),
    })
}

/// Play one game with an already-resolved strategy.
pub fn play_strategy(
    seq: &Sequence,
    strategy: &mut dyn Strategy,
    target: Target<'_>,
    loss: LossKind,
) -> Result<GameResult> {
    let n = seq.len();
    let mut revealed = 0;
    loop {
        match strategy.step(seq.window(0..revealed))? {
            Decision::Wait { until } => {
                if until >= n {
                    return Err(Error::TotalityViolation { n });
                }
                if until <= revealed {
                    return Err(Error::ProtocolViolation(format!(
                        "asked to wait until {until} with {revealed} observations already revealed"
                    )));
                }
                revealed = until;
            }
            Decision::Commit(c) => {
                if c.t() != revealed {
                    return Err(Error::ProtocolViolation(format!(
                        "commitment claims t = {} but {revealed} observations were revealed",
                        c.t()
                    )));
                }
                if c.t() + c.m() > n {
                    return Err(Error::InvalidCommitment {
                        t: c.t(),
                        m: c.m(),
                        n,
                    });
                }
                return score(seq, c, target, loss);
            }
        }
    }
}

pub(crate) fn check_horizon(seq: &Sequence, predictor: &dyn Predictor) -> Result<()> {
    if predictor.horizon() != seq.len() {
        return Err(Error::InvalidParameter(format!(
            "{} plays on {} observations, sequence has {}",
            predictor.name(),
            predictor.horizon(),
            seq.len()
        )));
    }
    Ok(())
}

/// Toss the predictor's coins with `rng` and play one game.
pub fn play(
    seq: &Sequence,
    predictor: &dyn Predictor,
    target: Target<'_>,
    loss: LossKind,
    rng: &mut dyn RngCore,
) -> Result<GameResult> {
    check_horizon(seq, predictor)?;
    let mut strategy = predictor.start(rng);
    play_strategy(seq, strategy.as_mut(), target, loss)
}

#[cfg(test)]
mod tests {
    use std::sync::{Arc, Mutex};

    use super::*;
    use crate::game::Window;
    use crate::predictors::{erm_predictor, selective_predictor};
    use crate::seed::rng_from_seed;
    use crate::sequences::{alternating, constant, erm_hard_instance};

    #[test]
    fn constant_sequence_costs_nothing() {
        let f = StatisticFamily::mean();
        let p = selective_predictor(f.clone(), 4).unwrap();
        let seq = constant(16, 0.5).unwrap();
        let mut rng = rng_from_seed(0);
        for _ in 0..20 {
            let r = play(&seq, &p, Target::Statistic(&f), LossKind::Squared, &mut rng).unwrap();
            assert_eq!(r.loss, 0.0);
        }
    }

    #[test]
    fn height_one_on_zero_one() {
        let f = StatisticFamily::mean();
        let p = selective_predictor(f.clone(), 1).unwrap();
        let seq = alternating(2).unwrap();
        let r = play(
            &seq,
            &p,
            Target::Statistic(&f),
            LossKind::Squared,
            &mut rng_from_seed(1),
        )
        .unwrap();
        assert_eq!((r.predicted, r.actual, r.loss), (0.0, 1.0, 1.0));
        assert_eq!(r.loss, r.recomputed_loss());
    }

    #[test]
    fn excess_risk_on_the_hard_instance() {
        // k' = 2, t = 0: ERM picks model 2 on symbols (0, 1). On (2, 3) model 2
        // costs 1 while model 3 costs 3 eps = 1/4, so the excess risk is 3/4.
        let (class, seq) = erm_hard_instance(3).unwrap();
        let p = erm_predictor(Arc::new(class.clone()), 3).unwrap();
        let (mut s, _) = p
            .support()
            .unwrap()
            .into_iter()
            .find(|(s, _)| s.scale() == Some(2))
            .unwrap();
        let r = play_strategy(
            &seq,
            s.as_mut(),
            Target::Models(&class),
            LossKind::ExcessRisk,
        )
        .unwrap();
        assert_eq!(r.commitment.payload(), Payload::Model(1));
        assert_eq!(r.commitment.t(), 2);
        assert!((r.loss - 0.75).abs() < 1e-12, "{}", r.loss);
    }

    struct Spy {
        seen: Arc<Mutex<Vec<usize>>>,
        commit_at: usize,
        n: usize,
    }

    impl Strategy for Spy {
        fn step(&mut self, prefix: Window<'_>) -> Result<Decision> {
            self.seen.lock().unwrap().push(prefix.len());
            if prefix.len() < self.commit_at {
                Ok(Decision::Wait {
                    until: prefix.len() + 1,
                })
            } else {
                Ok(Decision::Commit(Commitment::new(
                    self.n,
                    self.commit_at,
                    1,
                    Payload::Value(0.0),
                )?))
            }
        }
    }

    #[test]
    fn spy_never_sees_past_its_commitment() {
        let seq = alternating(32).unwrap();
        let f = StatisticFamily::mean();
        for commit_at in [0, 5, 31] {
            let seen = Arc::new(Mutex::new(Vec::new()));
            let mut spy = Spy {
                seen: seen.clone(),
                commit_at,
                n: 32,
            };
            play_strategy(&seq, &mut spy, Target::Statistic(&f), LossKind::Squared).unwrap();
            let seen = seen.lock().unwrap();
            assert_eq!(*seen.iter().max().unwrap(), commit_at);
            assert_eq!(seen.len(), commit_at + 1);
        }
    }

    struct Never;
    impl Strategy for Never {
        fn step(&mut self, prefix: Window<'_>) -> Result<Decision> {
            Ok(Decision::Wait {
                until: prefix.len() + 1,
            })
        }
    }

    struct Stalls;
    impl Strategy for Stalls {
        fn step(&mut self, prefix: Window<'_>) -> Result<Decision> {
            Ok(Decision::Wait {
                until: prefix.len(),
            })
        }
    }

    struct Early;
    impl Strategy for Early {
        fn step(&mut self, _prefix: Window<'_>) -> Result<Decision> {
            // Claims t = 2 while nothing has been revealed.
            Ok(Decision::Commit(Commitment::new(
                8,
                2,
                1,
                Payload::Value(0.0),
            )?))
        }
    }

    struct TooLong;
    impl Strategy for TooLong {
        fn step(&mut self, _prefix: Window<'_>) -> Result<Decision> {
            // Valid for n = 8, not for the 4-long sequence it is played on.
            Ok(Decision::Commit(Commitment::new(
                8,
                0,
                6,
                Payload::Value(0.0),
            )?))
        }
    }

    #[test]
    fn protocol_errors() {
        let seq = alternating(4).unwrap();
        let f = StatisticFamily::mean();
        let t = Target::Statistic(&f);
        assert!(matches!(
            play_strategy(&seq, &mut Never, t, LossKind::Squared),
            Err(Error::TotalityViolation { n: 4 })
        ));
        assert!(matches!(
            play_strategy(&seq, &mut Stalls, t, LossKind::Squared),
            Err(Error::ProtocolViolation(_))
        ));
        assert!(matches!(
            play_strategy(&seq, &mut Early, t, LossKind::Squared),
            Err(Error::ProtocolViolation(_))
        ));
        assert!(matches!(
            play_strategy(&seq, &mut TooLong, t, LossKind::Squared),
            Err(Error::InvalidCommitment { .. })
        ));
        assert!(matches!(
            play_strategy(&seq, &mut TooLong, t, LossKind::ExcessRisk),
            Err(Error::InvalidCommitment { .. })
        ));
    }

    #[test]
    fn loss_payload_mismatch() {
        let seq = alternating(8).unwrap();
        let f = StatisticFamily::mean();
        let p = selective_predictor(f.clone(), 3).unwrap();
        let r = play(
            &seq,
            &p,
            Target::Statistic(&f),
            LossKind::ExcessRisk,
            &mut rng_from_seed(0),
        );
        assert!(matches!(r, Err(Error::LossMismatch { .. })));
        let short = alternating(4).unwrap();
        assert!(play(
            &short,
            &p,
            Target::Statistic(&f),
            LossKind::Squared,
            &mut rng_from_seed(0)
        )
        .is_err());
    }
}
