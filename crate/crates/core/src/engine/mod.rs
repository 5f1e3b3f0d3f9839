//! Running games.
//!
//! [`play_strategy`] is the only place where a predictor meets a sequence: it
//! reveals prefixes on request and scores the commitment, so a strategy can
//! never read past the time at which it commits. Everything else here is
//! built from it: exact expectations over finite predictor randomness (and,
//! optionally, over enumerable sources), seeded Monte Carlo, and the
//! conditional-variance certificate that lower-bounds every predictor.

mod exact;
mod monte_carlo;
mod play;
mod report;
mod variance;

pub use exact::{
    exact_expected_loss, exact_expected_loss_over_source, exact_games, exact_report, WeightedGame,
};
pub use monte_carlo::{monte_carlo, monte_carlo_range, Experiment, TrialMode};
pub use play::{play, play_strategy, Target};
pub use report::{TrialRecord, TrialReport, CI_Z};
pub use variance::{
    certify_source, min_conditional_variance, VarianceCertificate, VarianceRow, WindowConstraint,
};
