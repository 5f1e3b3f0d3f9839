//! Statistic families `f_m`, the one-dimensional earth mover's distance and
//! randomized falsifiers for the smoothness and concatenation-concavity
//! properties that the selective predictor's guarantees rely on.
//!
//! A family is *L-smooth* when `|f(x) - f(y)| <= L * emd(x, y)` for equal
//! length inputs, and *concatenation-concave* when
//! `f(x ++ y) >= |x|/(|x|+|y|) f(x) + |y|/(|x|+|y|) f(y)`.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::game::Window;
use crate::seed::rng_from_seed;

/// Slack allowed by the property checkers.
pub const PROPERTY_TOLERANCE: f64 = 1e-9;

pub fn arithmetic_mean(x: &[f64]) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(x.iter().sum::<f64>() / x.len() as f64)
}

fn sorted(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.sort_unstable_by(f64::total_cmp);
    v
}

/// Earth mover's distance between the uniform distributions on the multisets
/// `x` and `y`, computed as the integral of the absolute difference between
/// their empirical CDFs. Lengths may differ.
pub fn emd(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySequence);
    }
    let (a, b) = (sorted(x), sorted(y));
    Ok(emd_presorted(&a, &b))
}

/// `emd` for inputs that are already sorted ascending.
pub(crate) fn emd_presorted(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut prev = a[0].min(b[0]);
    let mut total = 0.0;
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&u), Some(&v)) => u.min(v),
            (Some(&u), None) => u,
            (None, Some(&v)) => v,
            (None, None) => unreachable!(),
        };
        // CDFs are constant on [prev, next).
        total += (i as f64 / na - j as f64 / nb).abs() * (next - prev);
        while i < a.len() && a[i] == next {
            i += 1;
        }
        while j < b.len() && b[j] == next {
            j += 1;
        }
        prev = next;
    }
    total
}

/// Equal-length earth mover's distance via `(1/m) sum |sort(x)_i - sort(y)_i|`.
pub fn emd_equal_length(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySequence);
    }
    if x.len() != y.len() {
        return Err(Error::InvalidParameter(format!(
            "sorted-difference emd needs equal lengths, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let (a, b) = (sorted(x), sorted(y));
    let sum: f64 = a.iter().zip(&b).map(|(u, v)| (u - v).abs()).sum();
    Ok(sum / a.len() as f64)
}

/// Observation kind a family is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Real,
    Symbols { alphabet: usize },
}

type EvalFn = dyn Fn(Window<'_>) -> Result<f64> + Send + Sync;

/// A length-indexed statistic `f_m` together with the properties it is
/// declared to have. Declarations are not inferred; use [`check_smooth`] and
/// [`check_concat_concave`] to try to falsify them.
#[derive(Clone)]
pub struct StatisticFamily {
    name: String,
    domain: Domain,
    eval: Arc<EvalFn>,
    smoothness: Option<f64>,
    concat_concave: bool,
    range: Option<(f64, f64)>,
}

impl std::fmt::Debug for StatisticFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StatisticFamily")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("smoothness", &self.smoothness)
            .field("concat_concave", &self.concat_concave)
            .field("range", &self.range)
            .finish()
    }
}

impl StatisticFamily {
    pub fn new(
        name: impl Into<String>,
        domain: Domain,
        eval: impl Fn(Window<'_>) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            domain,
            eval: Arc::new(eval),
            smoothness: None,
            concat_concave: false,
            range: None,
        }
    }

    pub fn with_smoothness(mut self, lipschitz: f64) -> Self {
        self.smoothness = Some(lipschitz);
        self
    }

    pub fn with_concat_concave(mut self, flag: bool) -> Self {
        self.concat_concave = flag;
        self
    }

    pub fn with_range(mut self, lo: f64, hi: f64) -> Self {
        self.range = Some((lo, hi));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn smoothness(&self) -> Option<f64> {
        self.smoothness
    }

    pub fn is_concat_concave(&self) -> bool {
        self.concat_concave
    }

    pub fn range(&self) -> Option<(f64, f64)> {
        self.range
    }

    pub fn eval(&self, window: Window<'_>) -> Result<f64> {
        if window.is_empty() {
            return Err(Error::EmptySequence);
        }
        (self.eval)(window)
    }

    pub fn eval_real(&self, x: &[f64]) -> Result<f64> {
        self.eval(Window::Real(x))
    }

    pub fn eval_symbols(&self, x: &[usize]) -> Result<f64> {
        self.eval(Window::Symbol(x))
    }

    /// The arithmetic mean: 1-smooth, concatenation-concave with equality.
    pub fn mean() -> Self {
        Self::new("mean", Domain::Real, |w| arithmetic_mean(w.as_real()?))
            .with_smoothness(1.0)
            .with_concat_concave(true)
            .with_range(0.0, 1.0)
    }
}

/// `f_m(x) = (1/m) sum g(x_i)`. The caller declares the Lipschitz constant of
/// `g`, which becomes the family's smoothness constant; `g` must map `[0, 1]`
/// into `[0, 1]`.
pub fn plugin_mean_family(
    name: impl Into<String>,
    g: impl Fn(f64) -> f64 + Send + Sync + 'static,
    lipschitz: f64,
) -> StatisticFamily {
    StatisticFamily::new(name, Domain::Real, move |w| {
        let x = w.as_real()?;
        Ok(x.iter().map(|&v| g(v)).sum::<f64>() / x.len() as f64)
    })
    .with_smoothness(lipschitz)
    .with_concat_concave(true)
    .with_range(0.0, 1.0)
}

/// Plug-in mean of `x^2` (2-smooth).
pub fn square_mean_family() -> StatisticFamily {
    plugin_mean_family("square-mean", |x| x * x, 2.0)
}

/// Plug-in mean of `|x - 1/2|` (1-smooth).
pub fn abs_deviation_family() -> StatisticFamily {
    plugin_mean_family("abs-deviation", |x| (x - 0.5).abs(), 1.0)
}

/// `f_m(x) = emd(x, reference)`, 1-smooth by the triangle inequality.
pub fn emd_to_reference_family(reference: Vec<f64>) -> Result<StatisticFamily> {
    if reference.is_empty() {
        return Err(Error::EmptySequence);
    }
    if let Some((index, &value)) = reference
        .iter()
        .enumerate()
        .find(|(_, v)| !(0.0..=1.0).contains(*v))
    {
        return Err(Error::OutOfUnitInterval { index, value });
    }
    let reference = sorted(&reference);
    Ok(
        StatisticFamily::new("emd-to-reference", Domain::Real, move |w| {
            let x = sorted(w.as_real()?);
            Ok(emd_presorted(&x, &reference))
        })
        .with_smoothness(1.0)
        .with_range(0.0, 1.0),
    )
}

/// A finite model class, each model being a loss table over symbol ids.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelClass {
    tables: Vec<Vec<f64>>,
    alphabet: usize,
}

impl ModelClass {
    pub fn new(tables: Vec<Vec<f64>>) -> Result<Self> {
        let alphabet = tables
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidParameter("model class must be non-empty".into()))?;
        if alphabet == 0 {
            return Err(Error::InvalidParameter(
                "loss tables must cover at least one symbol".into(),
            ));
        }
        for (i, table) in tables.iter().enumerate() {
            if table.len() != alphabet {
                return Err(Error::InvalidParameter(format!(
                    "loss table {i} has {} entries, expected {alphabet}",
                    table.len()
                )));
            }
            if let Some((index, &value)) = table
                .iter()
                .enumerate()
                .find(|(_, v)| !(0.0..=1.0).contains(*v))
            {
                return Err(Error::OutOfUnitInterval { index, value });
            }
        }
        Ok(Self { tables, alphabet })
    }

    /// Tables with i.i.d. uniform `[0, 1]` entries.
    pub fn random<R: Rng + ?Sized>(size: usize, alphabet: usize, rng: &mut R) -> Result<Self> {
        let tables = (0..size)
            .map(|_| (0..alphabet).map(|_| rng.gen::<f64>()).collect())
            .collect();
        Self::new(tables)
    }

    pub fn size(&self) -> usize {
        self.tables.len()
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn table(&self, model: usize) -> &[f64] {
        &self.tables[model]
    }

    fn check_symbols(&self, ids: &[usize]) -> Result<()> {
        if ids.is_empty() {
            return Err(Error::EmptySequence);
        }
        match ids.iter().enumerate().find(|(_, &s)| s >= self.alphabet) {
            Some((index, &symbol)) => Err(Error::SymbolOutOfRange {
                index,
                symbol,
                alphabet: self.alphabet,
            }),
            None => Ok(()),
        }
    }

    /// Average loss of `model` on `ids`.
    pub fn average_loss(&self, model: usize, ids: &[usize]) -> Result<f64> {
        self.check_symbols(ids)?;
        let table = self
            .tables
            .get(model)
            .ok_or_else(|| Error::InvalidParameter(format!("model index {model} out of range")))?;
        Ok(ids.iter().map(|&s| table[s]).sum::<f64>() / ids.len() as f64)
    }

    /// All per-model average losses on `ids`.
    pub fn average_losses(&self, ids: &[usize]) -> Result<Vec<f64>> {
        self.check_symbols(ids)?;
        let inv = 1.0 / ids.len() as f64;
        Ok(self
            .tables
            .iter()
            .map(|t| ids.iter().map(|&s| t[s]).sum::<f64>() * inv)
            .collect())
    }

    /// Empirical risk minimizer on `ids` and its average loss; ties go to the
    /// smallest model index.
    pub fn best(&self, ids: &[usize]) -> Result<(usize, f64)> {
        let losses = self.average_losses(ids)?;
        let mut best = (0, losses[0]);
        for (i, &l) in losses.iter().enumerate().skip(1) {
            if l < best.1 {
                best = (i, l);
            }
        }
        Ok(best)
    }
}

/// `f_m(x) = min over models of the average loss on x`: the learnability of
/// the window. Concatenation-concave, range `[0, 1]`.
pub fn learnability_family(class: Arc<ModelClass>) -> StatisticFamily {
    let alphabet = class.alphabet();
    StatisticFamily::new("learnability", Domain::Symbols { alphabet }, move |w| {
        Ok(class.best(w.as_symbols()?)?.1)
    })
    .with_concat_concave(true)
    .with_range(0.0, 1.0)
}

/// `f_m(x) = max over models of the average loss on x`. A maximum of linear
/// functionals is concatenation-*convex*, so this is the planted
/// counterexample for [`check_concat_concave`].
pub fn max_loss_family(class: Arc<ModelClass>) -> StatisticFamily {
    let alphabet = class.alphabet();
    StatisticFamily::new("max-loss", Domain::Symbols { alphabet }, move |w| {
        let losses = class.average_losses(w.as_symbols()?)?;
        Ok(losses.into_iter().fold(f64::NEG_INFINITY, f64::max))
    })
    .with_range(0.0, 1.0)
}

/// Result of a randomized property check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropertyReport {
    pub trials: usize,
    pub violations: usize,
    /// Smallest observed `rhs_bound - lhs` margin; negative means violated.
    pub worst_slack: f64,
}

enum Draw {
    Real(Vec<f64>),
    Symbols(Vec<usize>),
}

impl Draw {
    fn window(&self) -> Window<'_> {
        match self {
            Draw::Real(v) => Window::Real(v),
            Draw::Symbols(v) => Window::Symbol(v),
        }
    }
}

fn draw<R: Rng + ?Sized>(domain: Domain, len: usize, rng: &mut R) -> Draw {
    match domain {
        Domain::Real => {
            // Mix bit-valued and continuous draws: bits stress the extremes.
            if rng.gen_bool(0.25) {
                Draw::Real(
                    (0..len)
                        .map(|_| f64::from(rng.gen::<bool>() as u8))
                        .collect(),
                )
            } else {
                Draw::Real((0..len).map(|_| rng.gen::<f64>()).collect())
            }
        }
        Domain::Symbols { alphabet } => {
            Draw::Symbols((0..len).map(|_| rng.gen_range(0..alphabet)).collect())
        }
    }
}

fn concat(a: &Draw, b: &Draw) -> Draw {
    match (a, b) {
        (Draw::Real(x), Draw::Real(y)) => Draw::Real(x.iter().chain(y).copied().collect()),
        (Draw::Symbols(x), Draw::Symbols(y)) => Draw::Symbols(x.iter().chain(y).copied().collect()),
        _ => unreachable!("draws share the family's domain"),
    }
}

/// Samples random `x`, `y` with lengths in `1..=max_len` and tests
/// `f(x ++ y) >= w_x f(x) + w_y f(y)` up to [`PROPERTY_TOLERANCE`].
pub fn check_concat_concave(
    family: &StatisticFamily,
    trials: usize,
    max_len: usize,
    seed: u64,
) -> Result<PropertyReport> {
    if trials == 0 || max_len == 0 {
        return Err(Error::InvalidParameter(
            "trials and max_len must be positive".into(),
        ));
    }
    let mut rng = rng_from_seed(seed);
    let mut report = PropertyReport {
        trials,
        violations: 0,
        worst_slack: f64::INFINITY,
    };
    for _ in 0..trials {
        let (m1, m2) = (rng.gen_range(1..=max_len), rng.gen_range(1..=max_len));
        let x = draw(family.domain(), m1, &mut rng);
        let y = draw(family.domain(), m2, &mut rng);
        let xy = concat(&x, &y);
        let total = (m1 + m2) as f64;
        let rhs = (m1 as f64 / total) * family.eval(x.window())?
            + (m2 as f64 / total) * family.eval(y.window())?;
        let slack = family.eval(xy.window())? - rhs;
        report.worst_slack = report.worst_slack.min(slack);
        if slack < -PROPERTY_TOLERANCE {
            report.violations += 1;
        }
    }
    Ok(report)
}

/// Longest input drawn by [`check_smooth`].
pub const SMOOTH_CHECK_MAX_LEN: usize = 16;

/// Tests `|f(x) - f(y)| <= L emd(x, y)` on random equal-length real pairs.
/// Half of the pairs are independent draws, half are small perturbations.
pub fn check_smooth(
    family: &StatisticFamily,
    lipschitz: f64,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    if family.domain() != Domain::Real {
        return Err(Error::KindMismatch { expected: "real" });
    }
    let mut rng = rng_from_seed(seed);
    let mut report = PropertyReport {
        trials,
        violations: 0,
        worst_slack: f64::INFINITY,
    };
    for i in 0..trials {
        let m = rng.gen_range(1..=SMOOTH_CHECK_MAX_LEN);
        let Draw::Real(x) = draw(Domain::Real, m, &mut rng) else {
            unreachable!()
        };
        let y: Vec<f64> = if i % 2 == 0 {
            let Draw::Real(y) = draw(Domain::Real, m, &mut rng) else {
                unreachable!()
            };
            y
        } else {
            x.iter()
                .map(|&v| (v + rng.gen_range(-0.05..0.05)).clamp(0.0, 1.0))
                .collect()
        };
        let gap = (family.eval_real(&x)? - family.eval_real(&y)?).abs();
        let slack = lipschitz * emd(&x, &y)? - gap;
        report.worst_slack = report.worst_slack.min(slack);
        if slack < -PROPERTY_TOLERANCE {
            report.violations += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn mean_examples() {
        assert_eq!(arithmetic_mean(&[0.0, 1.0, 0.0, 1.0]).unwrap(), 0.5);
        assert_eq!(arithmetic_mean(&[1.0]).unwrap(), 1.0);
        assert_eq!(arithmetic_mean(&[0.25, 0.75, 0.5, 0.5]).unwrap(), 0.5);
        assert!(matches!(arithmetic_mean(&[]), Err(Error::EmptySequence)));
    }

    #[test]
    fn emd_examples() {
        assert_eq!(emd(&[0.0, 1.0], &[1.0, 0.0]).unwrap(), 0.0);
        assert_eq!(emd(&[0.0, 0.0], &[1.0, 1.0]).unwrap(), 1.0);
        assert!(close(emd(&[0.0, 1.0], &[1.0, 1.0]).unwrap(), 0.5));
        assert!(emd(&[], &[1.0]).is_err());
        // Unequal lengths: half the mass of (0, 1) moves 1/2 to reach 0.5.
        assert!(close(emd(&[0.5], &[0.0, 1.0]).unwrap(), 0.5));
    }

    #[test]
    fn plugin_and_reference_examples() {
        let mean = plugin_mean_family("id", |x| x, 1.0);
        assert_eq!(mean.eval_real(&[0.0, 1.0, 0.0, 1.0]).unwrap(), 0.5);
        assert_eq!(square_mean_family().eval_real(&[0.5, 0.5]).unwrap(), 0.25);
        assert_eq!(abs_deviation_family().eval_real(&[0.0, 1.0]).unwrap(), 0.5);

        let r = vec![0.2, 0.9, 0.4];
        let f = emd_to_reference_family(r.clone()).unwrap();
        assert_eq!(f.eval_real(&r).unwrap(), 0.0);
        let f0 = emd_to_reference_family(vec![0.0]).unwrap();
        assert_eq!(f0.eval_real(&[1.0, 1.0]).unwrap(), 1.0);
        let f01 = emd_to_reference_family(vec![0.0, 1.0]).unwrap();
        assert!(close(f01.eval_real(&[0.5, 0.5]).unwrap(), 0.5));
        assert!(emd_to_reference_family(vec![]).is_err());
        assert!(emd_to_reference_family(vec![1.5]).is_err());
    }

    #[test]
    fn learnability_examples() {
        let single = Arc::new(ModelClass::new(vec![vec![0.3; 4]]).unwrap());
        let f = learnability_family(single);
        assert!(close(f.eval_symbols(&[0, 3, 2]).unwrap(), 0.3));

        let two = Arc::new(ModelClass::new(vec![vec![0.2, 0.8], vec![0.6, 0.4]]).unwrap());
        let f = learnability_family(two.clone());
        assert!(close(f.eval_symbols(&[0, 1]).unwrap(), 0.5));
        assert!(matches!(
            f.eval_symbols(&[0, 2]),
            Err(Error::SymbolOutOfRange { symbol: 2, .. })
        ));
        assert!(f.eval_real(&[0.5]).is_err());
        assert!(f.is_concat_concave());
    }

    #[test]
    fn model_class_validation() {
        assert!(ModelClass::new(vec![]).is_err());
        assert!(ModelClass::new(vec![vec![0.1, 0.2], vec![0.1]]).is_err());
        assert!(ModelClass::new(vec![vec![0.1, 1.2]]).is_err());
        let c = ModelClass::new(vec![vec![0.5, 0.5], vec![0.5, 0.5]]).unwrap();
        assert_eq!(
            c.best(&[0, 1]).unwrap().0,
            0,
            "ties go to the smallest index"
        );
    }

    #[test]
    fn hand_built_concavity_violation() {
        // tables (1, 0) and (0, 1): f(0) = f(1) = 1 but f(0, 1) = 1/2.
        let c = Arc::new(ModelClass::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap());
        let f = max_loss_family(c);
        let lhs = f.eval_symbols(&[0, 1]).unwrap();
        let rhs = 0.5 * f.eval_symbols(&[0]).unwrap() + 0.5 * f.eval_symbols(&[1]).unwrap();
        assert_eq!((lhs, rhs), (0.5, 1.0));
    }

    #[test]
    fn concavity_checks() {
        let mean = check_concat_concave(&StatisticFamily::mean(), 2000, 12, 1).unwrap();
        assert_eq!(mean.violations, 0);
        assert!(mean.worst_slack.abs() < 1e-12);

        let mut rng = rng_from_seed(5);
        let class = Arc::new(ModelClass::random(4, 5, &mut rng).unwrap());
        let learn = check_concat_concave(&learnability_family(class.clone()), 1000, 12, 2).unwrap();
        assert_eq!(learn.violations, 0);
        let planted = check_concat_concave(&max_loss_family(class), 1000, 12, 3).unwrap();
        assert!(planted.violations >= 1);
    }

    #[test]
    fn smoothness_checks() {
        assert_eq!(
            check_smooth(&StatisticFamily::mean(), 1.0, 1000, 1)
                .unwrap()
                .violations,
            0
        );
        assert_eq!(
            check_smooth(&square_mean_family(), 2.0, 1000, 2)
                .unwrap()
                .violations,
            0
        );
        assert!(
            check_smooth(&square_mean_family(), 0.5, 1000, 3)
                .unwrap()
                .violations
                >= 1
        );
        // The hand pair: gap 0.19 against 0.5 * emd = 0.05.
        let f = square_mean_family();
        let gap = f.eval_real(&[1.0, 1.0]).unwrap() - f.eval_real(&[0.9, 0.9]).unwrap();
        assert!(gap > 0.5 * emd(&[0.9, 0.9], &[1.0, 1.0]).unwrap());
        assert!(check_smooth(
            &learnability_family(Arc::new(ModelClass::new(vec![vec![0.0]]).unwrap())),
            1.0,
            1,
            0
        )
        .is_err());
    }

    #[test]
    fn emd_reference_family_is_one_smooth() {
        let f = emd_to_reference_family(vec![0.1, 0.7, 0.7, 0.95]).unwrap();
        assert_eq!(check_smooth(&f, 1.0, 1000, 4).unwrap().violations, 0);
        assert_eq!(
            check_smooth(&abs_deviation_family(), 1.0, 1000, 6)
                .unwrap()
                .violations,
            0
        );
    }

    fn unit_vec(max: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(
            prop_oneof![Just(0.0), Just(1.0), 0.0f64..=1.0, Just(0.5)],
            1..max,
        )
    }

    proptest! {
        #[test]
        fn emd_is_a_metric(x in unit_vec(9), y in unit_vec(9), z in unit_vec(9)) {
            let xy = emd(&x, &y).unwrap();
            prop_assert!(xy >= 0.0);
            prop_assert!((xy - emd(&y, &x).unwrap()).abs() < 1e-12);
            prop_assert!(xy <= emd(&x, &z).unwrap() + emd(&z, &y).unwrap() + 1e-12);
            prop_assert!(emd(&x, &x).unwrap() == 0.0);
        }

        #[test]
        fn emd_zero_iff_same_multiset(x in unit_vec(8), perm in any::<prop::sample::Index>()) {
            let mut y = x.clone();
            let r = perm.index(y.len());
            y.rotate_left(r);
            prop_assert_eq!(emd(&x, &y).unwrap(), 0.0);
            let mut z = x.clone();
            z[0] = if z[0] > 0.5 { z[0] - 0.25 } else { z[0] + 0.25 };
            prop_assert!(emd(&x, &z).unwrap() > 0.0);
        }

        #[test]
        fn cdf_and_sorted_difference_agree(
            pairs in prop::collection::vec((0.0f64..=1.0, 0.0f64..=1.0), 1..40)
        ) {
            let (x, y): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
            let a = emd(&x, &y).unwrap();
            let b = emd_equal_length(&x, &y).unwrap();
            prop_assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }
}
