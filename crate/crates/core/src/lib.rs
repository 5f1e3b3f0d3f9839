//! Selective prediction games.
//!
//! A predictor watches a fixed (possibly adversarial, never adaptive) sequence
//! one observation at a time and, at a time of its choosing, commits to a
//! claim about a statistic of the next `m` observations, with `m` also chosen
//! by the predictor. This crate provides:
//!
//! - [`game`]: observations, sequences, commitments and the two point losses.
//! - [`statistics`]: statistic families (means, plug-in means, earth mover's
//!   distance to a reference, learnability of a finite model class) and
//!   randomized checkers for smoothness and concatenation-concavity.
//! - [`sequences`]: benign generators, the multi-scale anti-concentrated tree
//!   distribution, block adversaries against constrained predictors and a hard
//!   instance for empirical risk minimization.
//! - [`predictors`]: the dyadic selective predictor, its ERM variant, the
//!   constrained baselines and a wrapper for lengths that are not powers of two.
//! - [`engine`]: the no-lookahead game loop, exact expectations over finite
//!   randomness, seeded Monte Carlo and the conditional-variance lower-bound
//!   certificate.
//! - [`oracle`]: slow, independent reference computations used to cross-check
//!   the fast paths.

pub mod engine;
pub mod error;
pub mod game;
pub mod oracle;
pub mod predictors;
pub mod seed;
pub mod sequences;
pub mod statistics;

pub use error::{Error, Result};
pub use game::{
    absolute_loss, squared_loss, Commitment, GameResult, LossKind, Observation, Payload, Sequence,
    Window,
};
