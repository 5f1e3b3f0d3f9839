//! Command-line experiments over the `selpred` library: single runs against
//! a bound, variance certificates, figure data and the acceptance suite.

pub mod certify;
pub mod check;
pub mod config;
pub mod error;
pub mod figures;
pub mod registry;
pub mod run;
pub mod suite;

pub use check::{Check, Relation};
pub use config::ExperimentConfig;
pub use error::{CliError, CliResult};
