use std::ops::Range;

use rand::{Rng, RngCore};

use super::{Decision, Predictor, Strategy, WeightedStrategy};
use crate::error::{Error, Result};
use crate::game::{Commitment, Payload, Window};
use crate::statistics::StatisticFamily;

/// Largest supported height; keeps `2^k` comfortably inside `usize`.
const MAX_HEIGHT: u32 = 40;

/// One draw of the dyadic schedule: scale `k'` and aligned block start `t`.
///
/// The block `t..t + 2^k'` is split in halves; the first half is observed and
/// the statistic of the second half is predicted at time `t + 2^(k'-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelectiveChoice {
    pub k_prime: u32,
    pub t: usize,
}

impl SelectiveChoice {
    pub fn half(&self) -> usize {
        1 << (self.k_prime - 1)
    }

    /// Prediction time (number of revealed observations at commitment).
    pub fn commit_time(&self) -> usize {
        self.t + self.half()
    }

    pub fn observed(&self) -> Range<usize> {
        self.t..self.t + self.half()
    }

    pub fn predicted(&self) -> Range<usize> {
        self.commit_time()..self.t + 2 * self.half()
    }
}

/// The random window schedule shared by the selective and ERM predictors on
/// `n = 2^k`: `k'` uniform on `1..=k`, then `t` uniform on the multiples of
/// `2^k'` in `0..n`.
///
/// Draw order: `rng.gen_range(1..=k)` for `k'`, then
/// `rng.gen_range(0..n >> k')` for the block index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DyadicSchedule {
    k: u32,
}

impl DyadicSchedule {
    pub fn new(k: u32) -> Result<Self> {
        if !(1..=MAX_HEIGHT).contains(&k) {
            return Err(Error::InvalidParameter(format!(
                "height must lie in 1..={MAX_HEIGHT}, got {k}"
            )));
        }
        Ok(Self { k })
    }

    /// Schedule for a power-of-two length `n >= 2`.
    pub fn for_length(n: usize) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "length {n} is not a power of two >= 2; wrap the predictor for general lengths"
            )));
        }
        Self::new(n.trailing_zeros())
    }

    pub fn height(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> usize {
        1 << self.k
    }

    pub fn draw(&self, rng: &mut dyn RngCore) -> SelectiveChoice {
        let k_prime = rng.gen_range(1..=self.k);
        let block = rng.gen_range(0..self.n() >> k_prime);
        SelectiveChoice {
            k_prime,
            t: block << k_prime,
        }
    }

    /// Every choice with probability `(1/k) * 2^k' / n`.
    pub fn choices(&self) -> impl Iterator<Item = (SelectiveChoice, f64)> + '_ {
        (1..=self.k).flat_map(move |k_prime| {
            let blocks = self.n() >> k_prime;
            let p = 1.0 / (f64::from(self.k) * blocks as f64);
            (0..blocks).map(move |b| {
                (
                    SelectiveChoice {
                        k_prime,
                        t: b << k_prime,
                    },
                    p,
                )
            })
        })
    }

    /// Number of choices in the support.
    pub fn support_size(&self) -> usize {
        self.n() - 1
    }
}

/// Predicts that the statistic of the next half-block equals its value on the
/// half-block just observed.
#[derive(Clone, Debug)]
pub struct SelectivePredictor {
    family: StatisticFamily,
    schedule: DyadicSchedule,
}

pub fn selective_predictor(family: StatisticFamily, k: u32) -> Result<SelectivePredictor> {
    Ok(SelectivePredictor {
        family,
        schedule: DyadicSchedule::new(k)?,
    })
}

impl SelectivePredictor {
    /// Rejects lengths that are not powers of two.
    pub fn for_length(family: StatisticFamily, n: usize) -> Result<Self> {
        Ok(Self {
            family,
            schedule: DyadicSchedule::for_length(n)?,
        })
    }

    pub fn schedule(&self) -> DyadicSchedule {
        self.schedule
    }

    pub fn family(&self) -> &StatisticFamily {
        &self.family
    }

    pub fn strategy_for(&self, choice: SelectiveChoice) -> SelectiveStrategy<'_> {
        SelectiveStrategy {
            family: &self.family,
            choice,
            n: self.schedule.n(),
        }
    }
}

pub struct SelectiveStrategy<'a> {
    family: &'a StatisticFamily,
    choice: SelectiveChoice,
    n: usize,
}

impl Strategy for SelectiveStrategy<'_> {
    fn step(&mut self, prefix: Window<'_>) -> Result<Decision> {
        let at = self.choice.commit_time();
        if prefix.len() < at {
            return Ok(Decision::Wait { until: at });
        }
        let estimate = self.family.eval(prefix.slice(self.choice.observed()))?;
        Ok(Decision::Commit(Commitment::new(
            self.n,
            at,
            self.choice.half(),
            Payload::Value(estimate),
        )?))
    }

    fn scale(&self) -> Option<u32> {
        Some(self.choice.k_prime)
    }
}

impl Predictor for SelectivePredictor {
    fn name(&self) -> String {
        format!(
            "selective[{}](k={})",
            self.family.name(),
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
    use crate::seed::rng_from_seed;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_lengths() {
        assert!(SelectivePredictor::for_length(StatisticFamily::mean(), 12).is_err());
        assert!(SelectivePredictor::for_length(StatisticFamily::mean(), 1).is_err());
        assert!(selective_predictor(StatisticFamily::mean(), 0).is_err());
        assert!(SelectivePredictor::for_length(StatisticFamily::mean(), 16).is_ok());
    }

    #[test]
    fn height_one_predicts_second_from_first() {
        let p = selective_predictor(StatisticFamily::mean(), 1).unwrap();
        let support = p.support().unwrap();
        assert_eq!(support.len(), 1);
        let (mut s, prob) = support.into_iter().next().unwrap();
        assert_eq!(prob, 1.0);
        let x = [0.3, 0.9];
        assert_eq!(
            s.step(Window::Real(&x[..0])).unwrap(),
            Decision::Wait { until: 1 }
        );
        let Decision::Commit(c) = s.step(Window::Real(&x[..1])).unwrap() else {
            panic!("expected a commitment")
        };
        assert_eq!((c.t(), c.m(), c.payload()), (1, 1, Payload::Value(0.3)));
    }

    #[test]
    fn support_probabilities_are_rational_and_sum_to_one() {
        for k in 1..=14u32 {
            let sched = DyadicSchedule::new(k).unwrap();
            let choices: Vec<_> = sched.choices().collect();
            assert_eq!(choices.len(), sched.support_size());
            let total: f64 = choices.iter().map(|(_, p)| p).sum();
            assert!((total - 1.0).abs() < 1e-12);
            // Exact check in integers: scale k' contributes blocks * (1 / (k * blocks)).
            for kp in 1..=k {
                let blocks = choices.iter().filter(|(c, _)| c.k_prime == kp).count();
                assert_eq!(blocks, sched.n() >> kp);
            }
        }
    }

    #[test]
    fn draws_cover_the_support_uniformly_by_scale() {
        let sched = DyadicSchedule::new(4).unwrap();
        let mut rng = rng_from_seed(4);
        let mut counts = [0usize; 5];
        for _ in 0..40_000 {
            let c = sched.draw(&mut rng);
            assert_eq!(c.t % (1 << c.k_prime), 0);
            counts[c.k_prime as usize] += 1;
        }
        for &c in &counts[1..] {
            assert!((c as f64 - 10_000.0).abs() < 400.0, "{counts:?}");
        }
    }

    #[test]
    fn same_stream_same_strategy() {
        let p = selective_predictor(StatisticFamily::mean(), 6).unwrap();
        let x: Vec<f64> = (0..64).map(|i| (i % 3) as f64 / 2.0).collect();
        let mut commits = Vec::new();
        for _ in 0..2 {
            let mut rng = rng_from_seed(77);
            let mut s = p.start(&mut rng);
            let Decision::Wait { until } = s.step(Window::Real(&x[..0])).unwrap() else {
                panic!()
            };
            commits.push(s.step(Window::Real(&x[..until])).unwrap());
        }
        assert_eq!(commits[0], commits[1]);
    }

    proptest! {
        #[test]
        fn windows_stay_inside_the_sequence(k in 1u32..=10) {
            let sched = DyadicSchedule::new(k).unwrap();
            for (c, _) in sched.choices() {
                prop_assert!(c.predicted().end <= sched.n());
                prop_assert_eq!(c.predicted().start, c.observed().end);
                prop_assert_eq!(c.predicted().len(), c.observed().len());
                prop_assert!(c.commit_time() < sched.n());
            }
        }
    }
}
