//! Predictors behind a uniform step-wise interface.
//!
//! A [`Predictor`] first resolves its internal randomness into a per-game
//! [`Strategy`]. The engine then feeds the strategy the revealed prefix and
//! nothing else; the strategy either asks to keep observing up to some later
//! time or commits. Predictors with finitely many random choices expose them
//! through [`Predictor::support`], which makes exact expectations possible.

mod constrained;
mod erm;
mod selective;
mod wrap;

use rand::RngCore;

use crate::error::Result;
use crate::game::{Commitment, Window};

pub use constrained::{constrained_predictor, ConstrainedKind, ConstrainedPredictor};
pub use erm::{erm_predictor, ErmPredictor};
pub use selective::{selective_predictor, DyadicSchedule, SelectiveChoice, SelectivePredictor};
pub use wrap::{wrap_general_length, GeneralLength};

/// What a strategy does with the prefix it has been shown.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decision {
    /// Keep observing until `until` observations have been revealed.
    Wait { until: usize },
    /// Commit now; `commitment.t()` must equal the prefix length.
    Commit(Commitment),
}

/// One game's worth of behaviour, with the predictor's coins already tossed.
pub trait Strategy: Send {
    fn step(&mut self, prefix: Window<'_>) -> Result<Decision>;

    /// Dyadic scale `k'` of the chosen window, for predictors that have one.
    fn scale(&self) -> Option<u32> {
        None
    }
}

pub type WeightedStrategy<'a> = (Box<dyn Strategy + 'a>, f64);

pub trait Predictor: Send + Sync {
    fn name(&self) -> String;

    /// Sequence length this predictor plays on.
    fn horizon(&self) -> usize;

    /// Toss the predictor's coins and return the resulting strategy.
    fn start(&self, rng: &mut dyn RngCore) -> Box<dyn Strategy + '_>;

    /// Every strategy the coins can produce with its probability, when finite.
    fn support(&self) -> Option<Vec<WeightedStrategy<'_>>> {
        None
    }
}

impl<P: Predictor + ?Sized> Predictor for Box<P> {
    fn name(&self) -> String {
        (**self).name()
    }

    fn horizon(&self) -> usize {
        (**self).horizon()
    }

    fn start(&self, rng: &mut dyn RngCore) -> Box<dyn Strategy + '_> {
        (**self).start(rng)
    }

    fn support(&self) -> Option<Vec<WeightedStrategy<'_>>> {
        (**self).support()
    }
}
