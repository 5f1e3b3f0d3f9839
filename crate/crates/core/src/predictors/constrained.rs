use rand::{Rng, RngCore};

use super::{Decision, Predictor, Strategy, WeightedStrategy};
use crate::error::{Error, Result};
use crate::game::{Commitment, Payload, Window};

/// The three restricted predictor shapes that no algorithm can make work:
/// a prediction time known in advance, a window length known in advance, or
/// a window forced to cover the whole remaining tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstrainedKind {
    /// Commit at exactly `t` over the remainder `t..n`.
    FixedTime(usize),
    /// Commit at a uniform feasible time over a window of exactly `m`.
    FixedWindow(usize),
    /// Commit at a uniform time in `0..n` over the remainder.
    TailWindow,
}

/// Witness baselines for the constrained shapes. Point predictions are
/// empirical means of (part of) the prefix, or 1/2 with an empty prefix; the
/// fixed-window baseline averages the last `min(t, m)` observations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstrainedPredictor {
    kind: ConstrainedKind,
    n: usize,
}

pub fn constrained_predictor(kind: ConstrainedKind, n: usize) -> Result<ConstrainedPredictor> {
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    match kind {
        ConstrainedKind::FixedTime(t) if t >= n => Err(Error::InvalidParameter(format!(
            "fixed time {t} must be below {n}"
        ))),
        ConstrainedKind::FixedWindow(m) if m == 0 || m > n => Err(Error::InvalidParameter(
            format!("fixed window {m} must lie in 1..={n}"),
        )),
        _ => Ok(ConstrainedPredictor { kind, n }),
    }
}

struct PrefixMean {
    t: usize,
    m: usize,
    n: usize,
    /// Average only the most recent `lookback` observations.
    lookback: Option<usize>,
}

impl Strategy for PrefixMean {
    fn step(&mut self, prefix: Window<'_>) -> Result<Decision> {
        if prefix.len() < self.t {
            return Ok(Decision::Wait { until: self.t });
        }
        let x = prefix.as_real()?;
        let used = self.lookback.map_or(self.t, |l| l.min(self.t));
        let estimate = if used == 0 {
            0.5
        } else {
            x[self.t - used..self.t].iter().sum::<f64>() / used as f64
        };
        Ok(Decision::Commit(Commitment::new(
            self.n,
            self.t,
            self.m,
            Payload::Value(estimate),
        )?))
    }
}

impl ConstrainedPredictor {
    pub fn kind(&self) -> ConstrainedKind {
        self.kind
    }

    fn strategy_at(&self, t: usize) -> PrefixMean {
        let n = self.n;
        match self.kind {
            ConstrainedKind::FixedTime(_) | ConstrainedKind::TailWindow => PrefixMean {
                t,
                m: n - t,
                n,
                lookback: None,
            },
            ConstrainedKind::FixedWindow(m) => PrefixMean {
                t,
                m,
                n,
                lookback: Some(m),
            },
        }
    }

    /// Feasible commitment times, each equally likely.
    fn times(&self) -> std::ops::Range<usize> {
        match self.kind {
            ConstrainedKind::FixedTime(t) => t..t + 1,
            ConstrainedKind::FixedWindow(m) => 0..self.n - m + 1,
            ConstrainedKind::TailWindow => 0..self.n,
        }
    }
}

impl Predictor for ConstrainedPredictor {
    fn name(&self) -> String {
        match self.kind {
            ConstrainedKind::FixedTime(t) => format!("fixed-time(t={t})"),
            ConstrainedKind::FixedWindow(m) => format!("fixed-window(m={m})"),
            ConstrainedKind::TailWindow => "tail-window".into(),
        }
    }

    fn horizon(&self) -> usize {
        self.n
    }

    fn start(&self, rng: &mut dyn RngCore) -> Box<dyn Strategy + '_> {
        let t = rng.gen_range(self.times());
        Box::new(self.strategy_at(t))
    }

    fn support(&self) -> Option<Vec<WeightedStrategy<'_>>> {
        let times = self.times();
        let p = 1.0 / times.len() as f64;
        Some(
            times
                .map(|t| (Box::new(self.strategy_at(t)) as Box<dyn Strategy>, p))
                .collect(),
        )
    }
}
