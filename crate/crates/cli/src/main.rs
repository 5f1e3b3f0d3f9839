use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use selpred_cli::certify::certify;
use selpred_cli::figures::{figure_series, sample_std, write_figures_csv, DEFAULT_FIGURE_K};
use selpred_cli::run::run;
use selpred_cli::suite::{run_suite, suite_csv, write_suite, DEFAULT_SUITE_SEED};
use selpred_cli::{CliResult, ExperimentConfig};

#[derive(Parser)]
#[command(name = "selpred", version, about = "Selective prediction experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and compare its mean loss with the bound.
    Run(Flags),
    /// Enumerate an adversary and certify a conditional-variance lower bound.
    Certify(Flags),
    /// Block means of one anti-concentrated sample at scales 2^10 and 2^15.
    Figures {
        #[arg(long, default_value_t = DEFAULT_FIGURE_K)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Add an i.i.d. uniform-bits sample for contrast.
        #[arg(long)]
        contrast: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every acceptance criterion.
    Suite {
        #[arg(long, default_value_t = DEFAULT_SUITE_SEED)]
        seed: u64,
        /// Directory for suite.csv and per-criterion CSVs.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the suite a second time and require identical CSV bytes.
        #[arg(long)]
        twice: bool,
    },
}

#[derive(Args)]
struct Flags {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    source: Option<String>,
    #[arg(long)]
    predictor: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Exact expectation over source outcomes and predictor randomness.
    #[arg(long)]
    exact: bool,
    /// Sample sequences, average exactly over predictor randomness.
    #[arg(long)]
    exact_over_predictor: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    models: Option<usize>,
    #[arg(long)]
    alphabet: Option<usize>,
    #[arg(long)]
    value: Option<f64>,
    #[arg(long)]
    constraint: Option<String>,
}

impl Flags {
    fn into_config(self) -> CliResult<ExperimentConfig> {
        let file = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        Ok(file.overlay(ExperimentConfig {
            experiment: self.experiment,
            k: self.k,
            n: self.n,
            family: self.family,
            predictor: self.predictor,
            source: self.source,
            trials: self.trials,
            seed: self.seed,
            exact: self.exact,
            exact_over_predictor: self.exact_over_predictor,
            out: self.out,
            t: self.t,
            m: self.m,
            models: self.models,
            alphabet: self.alphabet,
            value: self.value,
            constraint: self.constraint,
        }))
    }
}

fn verdict(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn execute(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Run(flags) => {
            let outcome = run(&flags.into_config()?)?;
            for (key, value) in &outcome.settings {
                println!("# {key}={value}");
            }
            println!(
                "mean {:.6e} +- {:.3e} over {} rows",
                outcome.report.mean,
                outcome.report.ci_half_width,
                outcome.report.trials()
            );
            println!("{}", outcome.check);
            Ok(verdict(outcome.check.pass()))
        }
        Command::Certify(flags) => {
            let outcome = certify(&flags.into_config()?)?;
            let (t, m, prefix) = outcome.certificate.argmin;
            println!(
                "{} rows; minimum at t={t} m={m} prefix={prefix}",
                outcome.certificate.rows.len()
            );
            println!("{}", outcome.check);
            Ok(verdict(outcome.check.pass()))
        }
        Command::Figures {
            k,
            seed,
            contrast,
            out,
        } => {
            let series = figure_series(k, seed, contrast)?;
            for s in &series {
                println!(
                    "{} scale={} blocks={} std={:.4}",
                    s.source,
                    s.scale,
                    s.means.len(),
                    sample_std(&s.means)
                );
            }
            match out {
                Some(path) => {
                    write_figures_csv(&series, k, seed, BufWriter::new(File::create(path)?))?
                }
                None => write_figures_csv(&series, k, seed, std::io::stdout().lock())?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite { seed, out, twice } => {
            let outcomes = run_suite(seed);
            let mut pass = true;
            for o in &outcomes {
                println!("{}", o.line());
                pass &= o.passed();
            }
            if twice {
                let again = run_suite(seed);
                let same = suite_csv(&outcomes) == suite_csv(&again)
                    && outcomes
                        .iter()
                        .zip(&again)
                        .all(|(a, b)| a.artifacts == b.artifacts);
                println!(
                    "{} criterion 13 determinism: second run with seed {seed} is byte-identical",
                    if same { "PASS" } else { "FAIL" }
                );
                pass &= same;
            } else {
                println!("SKIP criterion 13 determinism (pass --twice)");
            }
            if let Some(dir) = out {
                let names = write_suite(&outcomes, &dir)?;
                println!("wrote {} files to {}", names.len(), dir.display());
            }
            Ok(verdict(pass))
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
