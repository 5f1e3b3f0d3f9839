//! The acceptance suite: one function per criterion, each returning the
//! checks it made and any CSV artifacts it produced.
//!
//! Everything random is derived from the suite seed, and every reduction is
//! order-independent or runs over ordered collections, so two runs with the
//! same seed produce byte-identical artifacts. Timings are reported on
//! stdout only.

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use selpred::engine::{
    certify_source, exact_expected_loss, monte_carlo, Experiment, Target, TrialReport,
    WindowConstraint,
};
use selpred::oracle::{emd_brute_force, emd_transport, HillClimber};
use selpred::predictors::{
    constrained_predictor, erm_predictor, selective_predictor, wrap_general_length,
    ConstrainedKind, Predictor,
};
use selpred::seed::{rng_from_seed, trial_seed, GameRng};
use selpred::sequences::{
    alternating, anti_concentrated_source, block_adversary, constant, erm_hard_instance,
    fixed_time_adversary, halving_block_adversary, IidBits, IidReals, IidSymbols, SequenceSource,
};
use selpred::statistics::{
    check_concat_concave, check_smooth, emd, emd_equal_length, emd_to_reference_family,
    learnability_family, max_loss_family, square_mean_family, ModelClass, StatisticFamily,
};
use selpred::{LossKind, Sequence};

use crate::check::{Check, Relation, CI_SLACK, EXACT_TOLERANCE};
use crate::error::{CliError, CliResult};
use crate::figures::{block_means, figure_series, sample_std, write_figures_csv, FIGURE_BLOCKS};
use crate::registry::{emd_reference, random_class};

pub const DEFAULT_SUITE_SEED: u64 = 42;
pub const CRITERIA: u8 = 12;

/// Builds the selective mean predictor for `2^k` observations. Criterion 1
/// takes one so that deliberately broken predictors can be run through it.
pub type PredictorFactory = dyn Fn(u32) -> selpred::Result<Box<dyn Predictor>> + Sync;

pub fn selective_mean(k: u32) -> selpred::Result<Box<dyn Predictor>> {
    Ok(Box::new(selective_predictor(StatisticFamily::mean(), k)?))
}

pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub artifacts: Vec<(String, Vec<u8>)>,
    pub elapsed: Duration,
    pub budget: Option<Duration>,
}

impl CriterionOutcome {
    pub fn within_budget(&self) -> bool {
        self.budget.is_none_or(|b| self.elapsed <= b)
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::pass) && self.within_budget()
    }

    /// One summary line citing the check closest to failing.
    pub fn line(&self) -> String {
        let worst = self
            .checks
            .iter()
            .min_by(|a, b| a.margin().total_cmp(&b.margin()));
        let detail = worst.map_or_else(|| "no checks".to_string(), |c| c.to_string());
        let budget = match self.budget {
            Some(b) => format!(", {:.1}s of {}s", self.elapsed.as_secs_f64(), b.as_secs()),
            None => format!(", {:.1}s", self.elapsed.as_secs_f64()),
        };
        format!(
            "{} criterion {:2} {} [{} checks{budget}] {detail}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks.len(),
        )
    }
}

/// Sequence classes every mean-type bound is checked on.
pub const SUITE_CLASSES: [&str; 5] = [
    "alternating",
    "constant",
    "iid-reals",
    "anti-concentrated",
    "hill-climbed",
];
pub const SUITE_RANDOM: usize = 200;
pub const SUITE_CLIMBED: usize = 50;

pub type SequenceSuite = Vec<(&'static str, Sequence)>;

/// Shared state of one suite run: the seed and memoized sequence suites.
pub struct SuiteContext {
    pub seed: u64,
    suites: Mutex<HashMap<u32, Arc<SequenceSuite>>>,
}

fn stream(seed: u64, label: u64, index: u64) -> GameRng {
    rng_from_seed(trial_seed(trial_seed(seed, label), index))
}

fn core<T>(r: selpred::Result<T>) -> CliResult<T> {
    r.map_err(CliError::from)
}

impl SuiteContext {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            suites: Mutex::new(HashMap::new()),
        }
    }

    /// Alternating, constant, 200 uniform, 200 anti-concentrated and 50
    /// hill-climbed sequences of length `2^k`.
    pub fn sequences(&self, k: u32) -> CliResult<Arc<SequenceSuite>> {
        if let Some(s) = self.suites.lock().expect("suite cache").get(&k) {
            return Ok(s.clone());
        }
        let n = 1usize << k;
        let mut out: SequenceSuite = vec![
            ("alternating", alternating(n)?),
            ("constant", constant(n, 0.3)?),
        ];
        let reals = IidReals::new(n)?;
        let tree = anti_concentrated_source(k)?;
        for i in 0..SUITE_RANDOM as u64 {
            out.push((
                "iid-reals",
                reals.sample(&mut stream(self.seed, 100 + u64::from(k), i)),
            ));
        }
        for i in 0..SUITE_RANDOM as u64 {
            out.push((
                "anti-concentrated",
                tree.sample(&mut stream(self.seed, 200 + u64::from(k), i)),
            ));
        }
        let climbed = (0..SUITE_CLIMBED as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = stream(self.seed, 300 + u64::from(k), i);
                let start = (0..n).map(|_| rng.gen::<f64>()).collect();
                let mut climber = HillClimber::new(start)?;
                climber.climb(climb_moves(n), &mut rng);
                Sequence::real(climber.sequence().to_vec())
            })
            .collect::<selpred::Result<Vec<_>>>()?;
        out.extend(climbed.into_iter().map(|s| ("hill-climbed", s)));
        let out = Arc::new(out);
        self.suites
            .lock()
            .expect("suite cache")
            .insert(k, out.clone());
        Ok(out)
    }
}

fn climb_moves(n: usize) -> usize {
    (16 * n).min(1 << 18)
}

/// Largest value per sequence class, in [`SUITE_CLASSES`] order.
fn max_by_class(
    suite: &SequenceSuite,
    f: impl Fn(&Sequence) -> CliResult<f64> + Sync,
) -> CliResult<Vec<(&'static str, f64)>> {
    let values = suite
        .par_iter()
        .map(|(_, s)| f(s))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SUITE_CLASSES
        .iter()
        .map(|class| {
            let worst = suite
                .iter()
                .zip(&values)
                .filter(|((c, _), _)| c == class)
                .map(|(_, v)| *v)
                .fold(f64::NEG_INFINITY, f64::max);
            (*class, worst)
        })
        .collect())
}

fn timed(
    id: u8,
    title: &'static str,
    budget: Option<u64>,
    body: impl FnOnce() -> CliResult<(Vec<Check>, Vec<(String, Vec<u8>)>)>,
) -> CriterionOutcome {
    let start = Instant::now();
    let (checks, artifacts) = body().unwrap_or_else(|e| {
        (
            vec![Check::new(
                format!("error: {e}"),
                f64::NAN,
                Relation::Equal,
                0.0,
                0.0,
            )],
            Vec::new(),
        )
    });
    CriterionOutcome {
        id,
        title,
        checks,
        artifacts,
        elapsed: start.elapsed(),
        budget: budget.map(Duration::from_secs),
    }
}

fn report_csv(report: &TrialReport, settings: &[(&str, String)]) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    let settings: Vec<(String, String)> = settings
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    report.write_csv(&mut buf, &settings)?;
    Ok(buf)
}

pub fn criterion_1(ctx: &SuiteContext, factory: &PredictorFactory) -> CriterionOutcome {
    timed(1, "mean upper bound 1/k", Some(60), || {
        let f = StatisticFamily::mean();
        let mut checks = Vec::new();
        for k in [4u32, 8, 12, 16] {
            let p = factory(k)?;
            let suite = ctx.sequences(k)?;
            let worst = max_by_class(&suite, |s| {
                core(exact_expected_loss(
                    s,
                    p.as_ref(),
                    Target::Statistic(&f),
                    LossKind::Squared,
                ))
            })?;
            for (class, v) in worst {
                checks.push(Check::new(
                    format!("k={k} {class}"),
                    v,
                    Relation::AtMost,
                    1.0 / f64::from(k),
                    EXACT_TOLERANCE,
                ));
            }
        }
        Ok((checks, Vec::new()))
    })
}

pub fn criterion_2(_ctx: &SuiteContext) -> CriterionOutcome {
    timed(2, "alternating sequence is tight", None, || {
        let f = StatisticFamily::mean();
        let mut checks = Vec::new();
        for k in 1..=16u32 {
            let p = selective_predictor(f.clone(), k)?;
            let e = exact_expected_loss(
                &alternating(1 << k)?,
                &p,
                Target::Statistic(&f),
                LossKind::Squared,
            )?;
            checks.push(Check::new(
                format!("k={k}"),
                e,
                Relation::Equal,
                1.0 / f64::from(k),
                1e-12,
            ));
        }
        Ok((checks, Vec::new()))
    })
}

pub const LOWER_BOUND_TRIALS: u64 = 20_000;

pub fn criterion_3(ctx: &SuiteContext) -> CriterionOutcome {
    timed(3, "mean lower bound 1/(64k)", Some(120), || {
        let cert = certify_source(&anti_concentrated_source(3)?, WindowConstraint::All)?;
        let mut checks = vec![Check::new(
            "k=3 enumerated min conditional variance",
            cert.min_variance,
            Relation::AtLeast,
            1.0 / 192.0,
            EXACT_TOLERANCE,
        )];
        let mut artifacts = Vec::new();
        let f = StatisticFamily::mean();
        for k in [8u32, 12] {
            let src = anti_concentrated_source(k)?;
            let p = selective_predictor(f.clone(), k)?;
            let exp = Experiment {
                id: "mean-lower",
                k: Some(k),
                source: &src,
                predictor: &p,
                target: Target::Statistic(&f),
                loss: LossKind::Squared,
            };
            let r = monte_carlo(
                &exp,
                LOWER_BOUND_TRIALS,
                trial_seed(ctx.seed, 3_000 + u64::from(k)),
            )?;
            checks.push(Check::new(
                format!("k={k} monte carlo ({} trials)", r.trials()),
                r.mean,
                Relation::AtLeast,
                1.0 / (64.0 * f64::from(k)),
                CI_SLACK * r.ci_half_width,
            ));
            artifacts.push((
                format!("mean_lower_k{k}.csv"),
                report_csv(
                    &r,
                    &[("family", f.name().to_string()), ("loss", "squared".into())],
                )?,
            ));
        }
        Ok((checks, artifacts))
    })
}

/// The criterion-1 suite moved to length `3 * 2^(k-1)`: fixed sequences are
/// rebuilt, anti-concentrated samples come from the next larger tree and are
/// truncated, the rest are extended with a uniform tail.
fn general_length_suite(ctx: &SuiteContext, k: u32) -> CliResult<SequenceSuite> {
    let n = 3usize << (k - 1);
    let base = ctx.sequences(k)?;
    let tree = anti_concentrated_source(k + 1)?;
    let mut out: SequenceSuite = vec![
        ("alternating", alternating(n)?),
        ("constant", constant(n, 0.3)?),
    ];
    for (i, (class, s)) in base.iter().enumerate() {
        let mut rng = stream(ctx.seed, 400 + u64::from(k), i as u64);
        let x = match *class {
            "alternating" | "constant" => continue,
            "anti-concentrated" => {
                let mut v = tree.sample(&mut rng).as_real().expect("real").to_vec();
                v.truncate(n);
                v
            }
            _ => {
                let mut v = s.as_real().expect("real").to_vec();
                v.extend((v.len()..n).map(|_| rng.gen::<f64>()));
                v
            }
        };
        out.push((class, Sequence::real(x)?));
    }
    Ok(out)
}

pub fn criterion_4(ctx: &SuiteContext) -> CriterionOutcome {
    timed(4, "lengths that are not powers of two", None, || {
        let f = StatisticFamily::mean();
        let mut checks = Vec::new();
        for k in [4u32, 8, 12, 16] {
            let n = 3usize << (k - 1);
            let p = wrap_general_length(selective_predictor(f.clone(), k)?, n)?;
            let suite = general_length_suite(ctx, k)?;
            let worst = max_by_class(&suite, |s| {
                core(exact_expected_loss(
                    s,
                    &p,
                    Target::Statistic(&f),
                    LossKind::Squared,
                ))
            })?;
            for (class, v) in worst {
                checks.push(Check::new(
                    format!("n={n} {class}"),
                    v,
                    Relation::AtMost,
                    1.0 / f64::from(k),
                    EXACT_TOLERANCE,
                ));
            }
        }
        Ok((checks, Vec::new()))
    })
}

pub fn criterion_5(ctx: &SuiteContext) -> CriterionOutcome {
    timed(5, "smooth families L/sqrt(k)", None, || {
        let families = [
            square_mean_family(),
            emd_to_reference_family(emd_reference())?,
        ];
        let mut checks = Vec::new();
        for f in &families {
            let l = f.smoothness().expect("declared smooth");
            for k in [8u32, 12, 16] {
                let p = selective_predictor(f.clone(), k)?;
                let suite = ctx.sequences(k)?;
                let worst = max_by_class(&suite, |s| {
                    core(exact_expected_loss(
                        s,
                        &p,
                        Target::Statistic(f),
                        LossKind::Absolute,
                    ))
                })?;
                for (class, v) in worst {
                    checks.push(Check::new(
                        format!("{} L={l} k={k} {class}", f.name()),
                        v,
                        Relation::AtMost,
                        l / f64::from(k).sqrt(),
                        EXACT_TOLERANCE,
                    ));
                }
            }
        }
        Ok((checks, Vec::new()))
    })
}

pub const CONCAVE_ALPHABET: usize = 4;

pub fn criterion_6(ctx: &SuiteContext) -> CriterionOutcome {
    timed(6, "concatenation-concave 4/k", None, || {
        let mut checks = Vec::new();
        for models in [2usize, 8, 32] {
            let class = Arc::new(random_class(
                models,
                CONCAVE_ALPHABET,
                trial_seed(ctx.seed, 600 + models as u64),
            )?);
            let f = learnability_family(class);
            for k in [8u32, 12] {
                let p = selective_predictor(f.clone(), k)?;
                let src = IidSymbols::new(1 << k, CONCAVE_ALPHABET)?;
                let worst = (0..SUITE_RANDOM as u64)
                    .into_par_iter()
                    .map(|i| {
                        let s = src.sample(&mut stream(
                            ctx.seed,
                            610 + u64::from(k) * 64 + models as u64,
                            i,
                        ));
                        core(exact_expected_loss(
                            &s,
                            &p,
                            Target::Statistic(&f),
                            LossKind::Squared,
                        ))
                    })
                    .collect::<CliResult<Vec<_>>>()?
                    .into_iter()
                    .fold(f64::NEG_INFINITY, f64::max);
                checks.push(Check::new(
                    format!("|L|={models} k={k} iid-symbols"),
                    worst,
                    Relation::AtMost,
                    4.0 / f64::from(k),
                    EXACT_TOLERANCE,
                ));
            }
        }
        Ok((checks, Vec::new()))
    })
}

pub const PROPERTY_TRIALS: usize = 10_000;
pub const PROPERTY_MAX_LEN: usize = 16;

pub fn criterion_7(ctx: &SuiteContext) -> CriterionOutcome {
    timed(7, "definition property suites", None, || {
        let s = |i: u64| trial_seed(ctx.seed, 700 + i);
        let class = Arc::new(random_class(8, CONCAVE_ALPHABET, s(0))?);
        let mean = StatisticFamily::mean();
        let violations = |r: selpred::statistics::PropertyReport| r.violations as f64;
        let mut checks = vec![
            Check::new(
                "concat-concave mean",
                violations(check_concat_concave(
                    &mean,
                    PROPERTY_TRIALS,
                    PROPERTY_MAX_LEN,
                    s(1),
                )?),
                Relation::Equal,
                0.0,
                0.0,
            ),
            Check::new(
                "concat-concave learnability |L|=8",
                violations(check_concat_concave(
                    &learnability_family(class.clone()),
                    PROPERTY_TRIALS,
                    PROPERTY_MAX_LEN,
                    s(2),
                )?),
                Relation::Equal,
                0.0,
                0.0,
            ),
            Check::new(
                "1-smooth mean",
                violations(check_smooth(&mean, 1.0, PROPERTY_TRIALS, s(3))?),
                Relation::Equal,
                0.0,
                0.0,
            ),
        ];
        // Planted counterexamples: a max-of-averages family is convex rather
        // than concave, and the squared mean is 2-smooth, not 1-smooth.
        let planted = Arc::new(ModelClass::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]])?);
        checks.push(Check::new(
            "planted max-loss family violations",
            violations(check_concat_concave(
                &max_loss_family(planted),
                PROPERTY_TRIALS,
                PROPERTY_MAX_LEN,
                s(4),
            )?),
            Relation::AtLeast,
            1.0,
            0.0,
        ));
        checks.push(Check::new(
            "planted square-mean as 1-smooth violations",
            violations(check_smooth(
                &square_mean_family(),
                1.0,
                PROPERTY_TRIALS,
                s(5),
            )?),
            Relation::AtLeast,
            1.0,
            0.0,
        ));
        Ok((checks, Vec::new()))
    })
}

pub const EMD_FUZZ_CASES: u64 = 10_000;
pub const EMD_ORACLE_CASES: u64 = 2_000;

fn fuzz_sample(rng: &mut GameRng, len: usize) -> Vec<f64> {
    match rng.gen_range(0..3) {
        0 => (0..len).map(|_| rng.gen::<f64>()).collect(),
        1 => (0..len)
            .map(|_| f64::from(rng.gen_range(0u8..=1)))
            .collect(),
        _ => (0..len)
            .map(|_| f64::from(rng.gen_range(0u8..=4)) / 4.0)
            .collect(),
    }
}

pub fn criterion_8(ctx: &SuiteContext) -> CriterionOutcome {
    timed(8, "earth mover's distance oracles", None, || {
        let mut rng = stream(ctx.seed, 800, 0);
        let mut worst_sorted: f64 = 0.0;
        for _ in 0..EMD_FUZZ_CASES {
            let len = rng.gen_range(1..=64);
            let x = fuzz_sample(&mut rng, len);
            let y = fuzz_sample(&mut rng, len);
            worst_sorted = worst_sorted.max((emd(&x, &y)? - emd_equal_length(&x, &y)?).abs());
        }
        let mut worst_brute: f64 = 0.0;
        let mut worst_transport: f64 = 0.0;
        for _ in 0..EMD_ORACLE_CASES {
            let a = rng.gen_range(1..=6);
            let b = rng.gen_range(1..=6);
            let x = fuzz_sample(&mut rng, a);
            let y = fuzz_sample(&mut rng, a);
            worst_brute = worst_brute.max((emd(&x, &y)? - emd_brute_force(&x, &y)?).abs());
            let z = fuzz_sample(&mut rng, b);
            worst_transport = worst_transport.max((emd(&x, &z)? - emd_transport(&x, &z)?).abs());
        }
        Ok((
            vec![
                Check::new(
                    "cdf integral vs sorted differences",
                    worst_sorted,
                    Relation::AtMost,
                    0.0,
                    1e-12,
                ),
                Check::new(
                    "cdf integral vs brute-force matching",
                    worst_brute,
                    Relation::AtMost,
                    0.0,
                    1e-9,
                ),
                Check::new(
                    "cdf integral vs transport (unequal sizes)",
                    worst_transport,
                    Relation::AtMost,
                    0.0,
                    1e-9,
                ),
            ],
            Vec::new(),
        ))
    })
}

pub const WITNESS_TRIALS: u64 = 10_000;

pub fn criterion_9(ctx: &SuiteContext) -> CriterionOutcome {
    timed(9, "selectivity is necessary", None, || {
        let mut checks = Vec::new();
        let mut artifacts = Vec::new();
        let f = StatisticFamily::mean();
        for n in [8usize, 16] {
            let fixed = (0..n)
                .map(|t| {
                    let c = certify_source(
                        &fixed_time_adversary(n, t)?,
                        WindowConstraint::FixedTime(t),
                    )?;
                    Ok(c.min_variance)
                })
                .collect::<CliResult<Vec<f64>>>()?;
            checks.push(Check::new(
                format!("n={n} fixed-time certificate, min over t"),
                fixed.iter().copied().fold(f64::INFINITY, f64::min),
                Relation::AtLeast,
                0.25,
                EXACT_TOLERANCE,
            ));
            let window = (1..=n)
                .map(|m| {
                    let c =
                        certify_source(&block_adversary(n, m)?, WindowConstraint::FixedWindow(m))?;
                    Ok(c.min_variance)
                })
                .collect::<CliResult<Vec<f64>>>()?;
            checks.push(Check::new(
                format!("n={n} fixed-window certificate, min over m"),
                window.iter().copied().fold(f64::INFINITY, f64::min),
                Relation::AtLeast,
                1.0 / 64.0,
                EXACT_TOLERANCE,
            ));
            let tail = certify_source(&halving_block_adversary(n)?, WindowConstraint::TailOnly)?;
            checks.push(Check::new(
                format!("n={n} tail-window certificate"),
                tail.min_variance,
                Relation::AtLeast,
                1.0 / 64.0,
                EXACT_TOLERANCE,
            ));

            let witnesses: Vec<(String, Box<dyn SequenceSource>, ConstrainedKind, f64)> = vec![
                (
                    format!("fixed-time-n{n}"),
                    Box::new(fixed_time_adversary(n, n / 2)?),
                    ConstrainedKind::FixedTime(n / 2),
                    0.25,
                ),
                (
                    format!("fixed-window-n{n}"),
                    Box::new(block_adversary(n, n / 4)?),
                    ConstrainedKind::FixedWindow(n / 4),
                    1.0 / 64.0,
                ),
                (
                    format!("tail-window-n{n}"),
                    Box::new(halving_block_adversary(n)?),
                    ConstrainedKind::TailWindow,
                    1.0 / 64.0,
                ),
            ];
            for (i, (id, src, kind, bound)) in witnesses.into_iter().enumerate() {
                let p = constrained_predictor(kind, n)?;
                let exp = Experiment {
                    id: &id,
                    k: None,
                    source: src.as_ref(),
                    predictor: &p,
                    target: Target::Statistic(&f),
                    loss: LossKind::Squared,
                };
                let r = monte_carlo(
                    &exp,
                    WITNESS_TRIALS,
                    trial_seed(ctx.seed, 900 + n as u64 * 8 + i as u64),
                )?;
                checks.push(Check::new(
                    format!("{id} witness monte carlo"),
                    r.mean,
                    Relation::AtLeast,
                    bound,
                    CI_SLACK * r.ci_half_width,
                ));
                artifacts.push((
                    format!("selectivity_{id}.csv"),
                    report_csv(&r, &[("source", src.name()), ("predictor", p.name())])?,
                ));
            }
        }
        Ok((checks, artifacts))
    })
}

pub const ERM_INSTANCES: u64 = 20;
pub const ERM_ALPHABET: usize = 8;

pub fn criterion_10(ctx: &SuiteContext) -> CriterionOutcome {
    timed(10, "ERM excess risk 2 sqrt(|L|/k)", None, || {
        let mut checks = Vec::new();
        for models in [2usize, 4, 8] {
            for k in [8u32, 12] {
                let label = 1_000 + u64::from(k) * 16 + models as u64;
                let losses = (0..ERM_INSTANCES)
                    .into_par_iter()
                    .map(|i| {
                        let class = random_class(
                            models,
                            ERM_ALPHABET,
                            trial_seed(trial_seed(ctx.seed, label), i),
                        )?;
                        let seq = IidSymbols::new(1 << k, ERM_ALPHABET)?
                            .sample(&mut stream(ctx.seed, label, i));
                        let p = erm_predictor(Arc::new(class.clone()), k)?;
                        core(exact_expected_loss(
                            &seq,
                            &p,
                            Target::Models(&class),
                            LossKind::ExcessRisk,
                        ))
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let worst = losses.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let least = losses.iter().copied().fold(f64::INFINITY, f64::min);
                checks.push(Check::new(
                    format!("|L|={models} k={k} worst of {ERM_INSTANCES}"),
                    worst,
                    Relation::AtMost,
                    2.0 * (models as f64 / f64::from(k)).sqrt(),
                    EXACT_TOLERANCE,
                ));
                checks.push(Check::new(
                    format!("|L|={models} k={k} excess risk is nonnegative"),
                    least,
                    Relation::AtLeast,
                    0.0,
                    EXACT_TOLERANCE,
                ));
            }
        }
        Ok((checks, Vec::new()))
    })
}

/// Reference rendering of the `k = 3` loss tables; `e` stands for epsilon.
pub const HARD_TABLE_K3: &str = "\
x_t,0,1,2,3,4,5,6,7
l_1,e,1,e,1,e,1,e,1
l_2,2e,2e,1,1,2e,2e,1,1
l_3,3e,3e,3e,3e,1,1,1,1
";

/// Render loss tables with entries written as multiples of `eps` or as `1`.
pub fn render_loss_table(class: &ModelClass, eps: f64) -> String {
    let alphabet = class.alphabet();
    let mut out = String::from("x_t");
    for x in 0..alphabet {
        out.push_str(&format!(",{x}"));
    }
    out.push('\n');
    for i in 0..class.size() {
        out.push_str(&format!("l_{}", i + 1));
        for &v in class.table(i) {
            let cell = if v == 1.0 {
                "1".to_string()
            } else {
                match (v / eps).round() as i64 {
                    1 => "e".to_string(),
                    c if (v - c as f64 * eps).abs() < 1e-12 => format!("{c}e"),
                    _ => v.to_string(),
                }
            };
            out.push(',');
            out.push_str(&cell);
        }
        out.push('\n');
    }
    out
}

pub fn criterion_11(_ctx: &SuiteContext) -> CriterionOutcome {
    timed(11, "ERM lower bound 1/8", None, || {
        let mut checks = Vec::new();
        for k in [3u32, 6, 10] {
            let (class, seq) = erm_hard_instance(k)?;
            let p = erm_predictor(Arc::new(class.clone()), k)?;
            let e = exact_expected_loss(&seq, &p, Target::Models(&class), LossKind::ExcessRisk)?;
            checks.push(Check::new(
                format!("k={k} hard instance"),
                e,
                Relation::AtLeast,
                0.125,
                EXACT_TOLERANCE,
            ));
        }
        let (class, _) = erm_hard_instance(3)?;
        let rendered = render_loss_table(&class, 1.0 / 12.0);
        checks.push(Check::new(
            "k=3 tables match the reference rendering (mismatched bytes)",
            rendered
                .bytes()
                .zip(HARD_TABLE_K3.bytes())
                .filter(|(a, b)| a != b)
                .count() as f64
                + rendered.len().abs_diff(HARD_TABLE_K3.len()) as f64,
            Relation::Equal,
            0.0,
            0.0,
        ));
        Ok((
            checks,
            vec![("erm_hard_k3_table.csv".to_string(), rendered.into_bytes())],
        ))
    })
}

pub const FIGURE_SEEDS: u64 = 200;
pub const FIGURE_STD_FLOOR: f64 = 0.05;
pub const FIGURE_IID_CEILING: f64 = 0.01;
pub const FIGURE_PASS_FRACTION: f64 = 0.95;

pub fn criterion_12(ctx: &SuiteContext) -> CriterionOutcome {
    timed(
        12,
        "multi-scale anti-concentration figure",
        Some(60),
        || {
            let k = crate::figures::DEFAULT_FIGURE_K;
            let tree = anti_concentrated_source(k)?;
            let bits = IidBits::new(1 << k)?;
            let per_seed = (0..FIGURE_SEEDS)
                .into_par_iter()
                .map(|i| {
                    let mut rng = stream(ctx.seed, 1_200, i);
                    let x = tree.sample(&mut rng);
                    let x = x.as_real().expect("real");
                    let small = sample_std(&block_means(x, 1 << 10, FIGURE_BLOCKS));
                    let large = sample_std(&block_means(x, 1 << 15, FIGURE_BLOCKS));
                    let b = bits.sample(&mut rng);
                    let iid = sample_std(&block_means(
                        b.as_real().expect("real"),
                        1 << 15,
                        FIGURE_BLOCKS,
                    ));
                    (small.min(large), iid)
                })
                .collect::<Vec<_>>();
            let spread = per_seed
                .iter()
                .filter(|(s, _)| *s > FIGURE_STD_FLOOR)
                .count() as f64
                / FIGURE_SEEDS as f64;
            let iid_worst = per_seed.iter().map(|p| p.1).fold(0.0, f64::max);
            let series = figure_series(k, ctx.seed, true)?;
            let mut csv = Vec::new();
            write_figures_csv(&series, k, ctx.seed, &mut csv)?;
            Ok((
            vec![
                Check::new(
                    format!("fraction of {FIGURE_SEEDS} seeds with std > {FIGURE_STD_FLOOR} at 2^10 and 2^15"),
                    spread,
                    Relation::AtLeast,
                    FIGURE_PASS_FRACTION,
                    0.0,
                ),
                Check::new("iid bits, largest std at 2^15", iid_worst, Relation::AtMost, FIGURE_IID_CEILING, 0.0),
            ],
            vec![("figure_blocks.csv".to_string(), csv)],
        ))
        },
    )
}

/// Run criterion `id` (1..=12) with the default predictor.
pub fn criterion(id: u8, ctx: &SuiteContext) -> Option<CriterionOutcome> {
    Some(match id {
        1 => criterion_1(ctx, &selective_mean),
        2 => criterion_2(ctx),
        3 => criterion_3(ctx),
        4 => criterion_4(ctx),
        5 => criterion_5(ctx),
        6 => criterion_6(ctx),
        7 => criterion_7(ctx),
        8 => criterion_8(ctx),
        9 => criterion_9(ctx),
        10 => criterion_10(ctx),
        11 => criterion_11(ctx),
        12 => criterion_12(ctx),
        _ => return None,
    })
}

pub fn run_suite(seed: u64) -> Vec<CriterionOutcome> {
    let ctx = SuiteContext::new(seed);
    (1..=CRITERIA)
        .filter_map(|id| criterion(id, &ctx))
        .collect()
}

/// `suite.csv`: one row per check.
pub fn suite_csv(outcomes: &[CriterionOutcome]) -> Vec<u8> {
    let mut out = String::from("criterion,label,relation,bound,tolerance,measured,pass\n");
    for o in outcomes {
        for c in &o.checks {
            out.push_str(&format!(
                "{},\"{}\",{},{},{},{},{}\n",
                o.id,
                c.label.replace('"', "'"),
                c.relation.symbol(),
                c.bound,
                c.tolerance,
                c.measured,
                if c.pass() { "PASS" } else { "FAIL" }
            ));
        }
    }
    out.into_bytes()
}

/// Write `suite.csv` and every artifact into `dir`; returns the file names.
pub fn write_suite(outcomes: &[CriterionOutcome], dir: &Path) -> CliResult<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut names = vec!["suite.csv".to_string()];
    fs::write(dir.join("suite.csv"), suite_csv(outcomes))?;
    for o in outcomes {
        for (name, bytes) in &o.artifacts {
            fs::write(dir.join(name), bytes)?;
            names.push(name.clone());
        }
    }
    Ok(names)
}
