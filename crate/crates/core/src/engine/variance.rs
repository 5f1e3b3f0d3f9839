use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sequences::{Outcome, SequenceSource};

/// Which commitments `(t, m)` a predictor is allowed to make.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowConstraint {
    All,
    FixedTime(usize),
    FixedWindow(usize),
    /// Only windows that run to the end of the sequence.
    TailOnly,
}

impl WindowConstraint {
    fn allows(self, n: usize, t: usize, m: usize) -> bool {
        match self {
            WindowConstraint::All => true,
            WindowConstraint::FixedTime(ft) => t == ft,
            WindowConstraint::FixedWindow(fm) => m == fm,
            WindowConstraint::TailOnly => t + m == n,
        }
    }
}

/// Conditional variance of the window mean of `x[t..t + m]` given the prefix
/// with id `prefix_id` (ids are per `t`, in order of first appearance).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VarianceRow {
    pub t: usize,
    pub m: usize,
    pub prefix_id: usize,
    pub probability: f64,
    pub variance: f64,
}

/// Smallest conditional variance over every allowed `(t, m)` and every
/// prefix of positive probability. No predictor restricted to those
/// commitments can have smaller expected squared loss for the mean.
#[derive(Clone, Debug, PartialEq)]
pub struct VarianceCertificate {
    pub n: usize,
    pub min_variance: f64,
    pub argmin: (usize, usize, usize),
    pub rows: Vec<VarianceRow>,
}

/// Certificate over an explicit outcome list of real sequences of equal length.
pub fn min_conditional_variance(
    outcomes: &[Outcome],
    constraint: WindowConstraint,
) -> Result<VarianceCertificate> {
    let first = outcomes
        .first()
        .ok_or_else(|| Error::InvalidParameter("no outcomes to certify".into()))?;
    let n = first.0.len();
    let xs = outcomes
        .iter()
        .map(|(s, _)| {
            if s.len() != n {
                return Err(Error::InvalidParameter("outcomes differ in length".into()));
            }
            s.as_real().ok_or(Error::KindMismatch { expected: "real" })
        })
        .collect::<Result<Vec<_>>>()?;
    let probs: Vec<f64> = outcomes.iter().map(|o| o.1).collect();
    match constraint {
        WindowConstraint::FixedTime(t) if t >= n => {
            return Err(Error::InvalidParameter(format!(
                "fixed time {t} must be below {n}"
            )))
        }
        WindowConstraint::FixedWindow(m) if m == 0 || m > n => {
            return Err(Error::InvalidParameter(format!(
                "fixed window {m} must lie in 1..={n}"
            )))
        }
        _ => {}
    }

    let prefix_sums: Vec<Vec<f64>> = xs
        .iter()
        .map(|x| {
            let mut acc = Vec::with_capacity(n + 1);
            acc.push(0.0);
            for v in x.iter() {
                acc.push(acc.last().unwrap() + v);
            }
            acc
        })
        .collect();

    let mut groups = vec![0usize; xs.len()];
    let mut group_count = 1;
    let mut rows = Vec::new();
    for t in 0..n {
        if t > 0 {
            let mut ids: HashMap<(usize, u64), usize> = HashMap::new();
            for (g, x) in groups.iter_mut().zip(&xs) {
                let next = ids.len();
                *g = *ids.entry((*g, x[t - 1].to_bits())).or_insert(next);
            }
            group_count = ids.len();
        }
        let ms: Vec<usize> = (1..=n - t)
            .filter(|&m| constraint.allows(n, t, m))
            .collect();
        if ms.is_empty() {
            continue;
        }
        let mut mass = vec![0.0; group_count];
        for (g, p) in groups.iter().zip(&probs) {
            mass[*g] += p;
        }
        for m in ms {
            let value = |o: usize| (prefix_sums[o][t + m] - prefix_sums[o][t]) / m as f64;
            let mut mean = vec![0.0; group_count];
            for o in 0..xs.len() {
                mean[groups[o]] += probs[o] * value(o);
            }
            for (mu, &w) in mean.iter_mut().zip(&mass) {
                if w > 0.0 {
                    *mu /= w;
                }
            }
            let mut var = vec![0.0; group_count];
            for o in 0..xs.len() {
                let d = value(o) - mean[groups[o]];
                var[groups[o]] += probs[o] * d * d;
            }
            for (prefix_id, (&v, &w)) in var.iter().zip(&mass).enumerate() {
                if w > 0.0 {
                    rows.push(VarianceRow {
                        t,
                        m,
                        prefix_id,
                        probability: w,
                        variance: v / w,
                    });
                }
            }
        }
    }
    let best = rows
        .iter()
        .min_by(|a, b| a.variance.total_cmp(&b.variance))
        .ok_or_else(|| Error::InvalidParameter("constraint admits no window".into()))?;
    Ok(VarianceCertificate {
        n,
        min_variance: best.variance,
        argmin: (best.t, best.m, best.prefix_id),
        rows,
    })
}

/// Enumerate `source` and certify it.
pub fn certify_source(
    source: &dyn SequenceSource,
    constraint: WindowConstraint,
) -> Result<VarianceCertificate> {
    min_conditional_variance(&source.enumerate()?, constraint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Sequence;
    use crate::sequences::{
        anti_concentrated_source, block_adversary, fixed_time_adversary, halving_block_adversary,
        Fixed,
    };

    #[test]
    fn fixed_time_adversary_gives_a_quarter() {
        let c = certify_source(
            &fixed_time_adversary(4, 2).unwrap(),
            WindowConstraint::FixedTime(2),
        )
        .unwrap();
        assert!((c.min_variance - 0.25).abs() < 1e-15);
        assert_eq!(c.rows.len(), 2);
        let c = certify_source(
            &fixed_time_adversary(8, 4).unwrap(),
            WindowConstraint::FixedTime(4),
        )
        .unwrap();
        assert!((c.min_variance - 0.25).abs() < 1e-15);
    }

    #[test]
    fn tree_height_three() {
        let c =
            certify_source(&anti_concentrated_source(3).unwrap(), WindowConstraint::All).unwrap();
        assert!(c.min_variance >= 1.0 / 192.0, "{}", c.min_variance);
        let (t, m, _) = c.argmin;
        assert!(t + m <= 8);
    }

    #[test]
    fn adversaries_beat_their_constraints() {
        for n in [8, 16] {
            let c = certify_source(
                &halving_block_adversary(n).unwrap(),
                WindowConstraint::TailOnly,
            )
            .unwrap();
            assert!(c.min_variance >= 1.0 / 64.0);
            for m in 1..=n {
                let c = certify_source(
                    &block_adversary(n, m).unwrap(),
                    WindowConstraint::FixedWindow(m),
                )
                .unwrap();
                assert!(
                    c.min_variance >= 1.0 / 64.0,
                    "n={n} m={m}: {}",
                    c.min_variance
                );
            }
        }
    }

    #[test]
    fn deterministic_source_has_zero_variance() {
        let src = Fixed::new("c", Sequence::real(vec![0.3; 4]).unwrap());
        let c = certify_source(&src, WindowConstraint::All).unwrap();
        assert_eq!(c.min_variance, 0.0);
        assert_eq!(c.rows.len(), 10);
    }

    #[test]
    fn rejections() {
        let src = Fixed::new("c", Sequence::real(vec![0.3; 4]).unwrap());
        assert!(certify_source(&src, WindowConstraint::FixedTime(4)).is_err());
        assert!(certify_source(&src, WindowConstraint::FixedWindow(5)).is_err());
        let sym = Fixed::new("s", Sequence::symbols(vec![0, 1], 2).unwrap());
        assert!(certify_source(&sym, WindowConstraint::All).is_err());
        assert!(
            certify_source(&anti_concentrated_source(4).unwrap(), WindowConstraint::All).is_err()
        );
    }
}
