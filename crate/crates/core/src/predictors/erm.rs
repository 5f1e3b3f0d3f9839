use std::sync::Arc;

use rand::RngCore;

use super::selective::{DyadicSchedule, SelectiveChoice};
use super::{Decision, Predictor, Strategy, WeightedStrategy};
use crate::error::Result;
use crate::game::{Commitment, Payload, Window};
use crate::statistics::ModelClass;

/// Empirical risk minimization on the dyadic schedule: observe the first half
/// of a random block and claim that the model with the smallest average loss
/// there (ties to the smallest index) also minimizes risk on the second half.
#[derive(Clone, Debug)]
pub struct ErmPredictor {
    class: Arc<ModelClass>,
    schedule: DyadicSchedule,
}

pub fn erm_predictor(class: Arc<ModelClass>, k: u32) -> Result<ErmPredictor> {
    Ok(ErmPredictor {
        class,
        schedule: DyadicSchedule::new(k)?,
    })
}

impl ErmPredictor {
    pub fn class(&self) -> &ModelClass {
        &self.class
    }

    pub fn schedule(&self) -> DyadicSchedule {
        self.schedule
    }

    fn strategy_for(&self, choice: SelectiveChoice) -> ErmStrategy<'_> {
        ErmStrategy {
            class: &self.class,
            choice,
            n: self.schedule.n(),
        }
    }
}

struct ErmStrategy<'a> {
    class: &'a ModelClass,
    choice: SelectiveChoice,
    n: usize,
}

impl Strategy for ErmStrategy<'_> {
    fn step(&mut self, prefix: Window<'_>) -> Result<Decision> {
        let at = self.choice.commit_time();
        if prefix.len() < at {
            return Ok(Decision::Wait { until: at });
        }
        let observed = prefix.slice(self.choice.observed()).as_symbols()?;
        let (model, _) = self.class.best(observed)?;
        Ok(Decision::Commit(Commitment::new(
            self.n,
            at,
            self.choice.half(),
            Payload::Model(model),
        )?))
    }

    fn scale(&self) -> Option<u32> {
        Some(self.choice.k_prime)
    }
}

impl Predictor for ErmPredictor {
    fn name(&self) -> String {
        format!(
            "erm(models={},k={})",
            self.class.size(),
            self.schedule.height()
        )
    }

    fn horizon(&self) -> usize {
        self.schedule.n()
    }

    fn start(&self, rng: &mut dyn RngCore) -> Box<dyn Strategy + '_> {
        Box::new(self.strategy_for(self.schedule.draw(rng)))
    }

    fn support(&self) -> Option<Vec<WeightedStrategy<'_>>> {
        Some(
            self.schedule
                .choices()
                .map(|(c, p)| (Box::new(self.strategy_for(c)) as Box<dyn Strategy>, p))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::erm_hard_instance;
    use crate::Error;

    #[test]
    fn hard_instance_picks_the_scale_model() {
        for k in 2..=6 {
            let (class, seq) = erm_hard_instance(k).unwrap();
            let p = erm_predictor(Arc::new(class), k).unwrap();
            let x = seq.as_symbols().unwrap();
            for (mut s, _) in p.support().unwrap() {
                let kp = s.scale().unwrap();
                let Decision::Wait { until } = s.step(Window::Symbol(&x[..0])).unwrap() else {
                    panic!()
                };
                let Decision::Commit(c) = s.step(Window::Symbol(&x[..until])).unwrap() else {
                    panic!()
                };
                assert_eq!(c.payload(), Payload::Model((kp - 1) as usize));
            }
        }
    }

    #[test]
    fn rejects_real_observations_and_unknown_symbols() {
        let class = Arc::new(ModelClass::new(vec![vec![0.1, 0.2]]).unwrap());
        let p = erm_predictor(class, 1).unwrap();
        let (mut s, _) = p.support().unwrap().pop().unwrap();
        assert!(matches!(
            s.step(Window::Real(&[0.5])),
            Err(Error::KindMismatch { .. })
        ));
        assert!(matches!(
            s.step(Window::Symbol(&[5])),
            Err(Error::SymbolOutOfRange { .. })
        ));
    }
}
