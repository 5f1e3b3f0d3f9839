//! Sequence sources: deterministic fixtures, i.i.d. generators, the
//! multi-scale anti-concentrated tree distribution, block adversaries aimed
//! at constrained predictors and the hard instance for empirical risk
//! minimization.
//!
//! Sources are immutable descriptions. Sampling takes an external rng, so
//! parallel trials simply use independent rng states.

mod adversary;
mod basic;
mod csv_io;
mod erm_hard;
mod tree;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::game::Sequence;

pub use adversary::{
    block_adversary, fixed_time_adversary, halving_block_adversary, BlockAdversary,
    MAX_ENUMERATED_BLOCKS,
};
pub use basic::{alternating, constant, Fixed, IidBits, IidReals, IidSymbols};
pub use csv_io::{read_sequence_csv, write_sequence_csv};
pub use erm_hard::{erm_hard_instance, erm_hard_loss};
pub use tree::{
    anti_concentrated_source, enumerate_anti_concentrated, AntiConcentrated, TreeSample,
    MAX_ENUMERATED_HEIGHT,
};

/// An outcome of an enumerable source with its probability.
pub type Outcome = (Sequence, f64);

#[allow(clippy::len_without_is_empty)]
pub trait SequenceSource: Send + Sync {
    fn name(&self) -> String;

    /// Length of every produced sequence.
    fn len(&self) -> usize;

    fn sample(&self, rng: &mut dyn RngCore) -> Sequence;

    /// Every outcome with positive probability. Entries may repeat a
    /// sequence when distinct internal paths produce it.
    fn enumerate(&self) -> Result<Vec<Outcome>> {
        Err(Error::NotEnumerable(self.name()))
    }
}
