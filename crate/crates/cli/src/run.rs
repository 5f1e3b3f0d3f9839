use std::fs::File;
use std::io::BufWriter;

use selpred::engine::{exact_report, monte_carlo_range, Experiment, TrialMode, TrialReport};

use crate::check::{Check, CI_SLACK, EXACT_TOLERANCE};
use crate::config::ExperimentConfig;
use crate::error::CliResult;
use crate::registry::{resolve, Components};

pub struct RunOutcome {
    pub report: TrialReport,
    pub check: Check,
    pub settings: Vec<(String, String)>,
}

/// Evaluate one configured experiment against its bound.
pub fn run(cfg: &ExperimentConfig) -> CliResult<RunOutcome> {
    cfg.validate_modes()?;
    let c = resolve(cfg)?;
    let seed = cfg.seed();
    let mut settings = c.settings.clone();
    let report = if cfg.exact {
        settings.push(("mode".into(), "exact".into()));
        let mut r = exact_report(
            &c.experiment,
            c.k,
            c.source.as_ref(),
            c.predictor.as_ref(),
            c.target(),
            c.loss,
        )?;
        r.master_seed = seed;
        r
    } else {
        let mode = if cfg.exact_over_predictor {
            TrialMode::ExactOverPredictor
        } else {
            TrialMode::Sampled
        };
        settings.push(("mode".into(), format!("{mode:?}")));
        settings.push(("trials".into(), cfg.trials().to_string()));
        monte_carlo_range(&experiment(&c), 0..cfg.trials(), seed, mode)?
    };
    let tolerance = if report.exact {
        EXACT_TOLERANCE
    } else {
        CI_SLACK * report.ci_half_width
    };
    let check = Check::new(
        format!(
            "{} ({} {})",
            c.experiment,
            c.bound.relation.symbol(),
            c.bound.formula
        ),
        report.mean,
        c.bound.relation,
        c.bound.value,
        tolerance,
    );
    if let Some(path) = &cfg.out {
        report.write_csv(BufWriter::new(File::create(path)?), &settings)?;
    }
    Ok(RunOutcome {
        report,
        check,
        settings,
    })
}

fn experiment(c: &Components) -> Experiment<'_> {
    Experiment {
        id: &c.experiment,
        k: c.k,
        source: c.source.as_ref(),
        predictor: c.predictor.as_ref(),
        target: c.target(),
        loss: c.loss,
    }
}
