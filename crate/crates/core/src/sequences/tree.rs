use rand::{Rng, RngCore};

use super::{Outcome, SequenceSource};
use crate::error::{Error, Result};
use crate::game::Sequence;

/// Largest tree height [`enumerate_anti_concentrated`] accepts; height 3
/// already has `2^14` outcomes and height 4 would have `2^30`.
pub const MAX_ENUMERATED_HEIGHT: u32 = 3;

/// Distribution over sequences of length `2^k` that stay anti-concentrated at
/// every dyadic scale.
///
/// The values sit on a perfect binary tree. The root is 1/2, and a node on
/// level `j` is `1/2 + s * sqrt(j) * delta` for a sign `s`, with
/// `delta = 1 / (2 sqrt(k))`. A child of an up-node goes up with probability
/// `(sqrt(j) + sqrt(j-1)) / (2 sqrt(j))`; for a down-node the two
/// probabilities swap. Each child therefore has its parent's value as its
/// conditional mean and conditional variance `delta^2`. Leaves (level `k`)
/// are exactly 0 or 1.
///
/// Sampling is breadth-first, left to right, one `f64` draw per node: the
/// child goes up iff `rng.gen::<f64>() < p_up`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AntiConcentrated {
    k: u32,
}

pub fn anti_concentrated_source(k: u32) -> Result<AntiConcentrated> {
    if k < 1 {
        return Err(Error::InvalidParameter(
            "tree height must be at least 1".into(),
        ));
    }
    if k > 40 {
        return Err(Error::InvalidParameter(format!(
            "tree height {k} is too large"
        )));
    }
    Ok(AntiConcentrated { k })
}

impl AntiConcentrated {
    pub fn height(&self) -> u32 {
        self.k
    }

    pub fn delta(&self) -> f64 {
        1.0 / (2.0 * f64::from(self.k).sqrt())
    }

    /// Value of a level-`j` node with the given sign. Computed as
    /// `1/2 +- sqrt(j/k)/2` so that leaves land exactly on 0 and 1.
    pub fn level_value(&self, level: u32, up: bool) -> f64 {
        let spread = 0.5 * (f64::from(level) / f64::from(self.k)).sqrt();
        if up {
            0.5 + spread
        } else {
            0.5 - spread
        }
    }

    /// Probability that a level-`j` node (`j >= 1`) goes up given its parent's sign.
    pub fn up_probability(level: u32, parent_up: bool) -> f64 {
        let j = f64::from(level);
        let r = ((j - 1.0) / j).sqrt();
        if parent_up {
            0.5 * (1.0 + r)
        } else {
            0.5 * (1.0 - r)
        }
    }

    fn next_level(prev: &[bool], level: u32, rng: &mut dyn RngCore) -> Vec<bool> {
        let p = [
            Self::up_probability(level, false),
            Self::up_probability(level, true),
        ];
        (0..prev.len() * 2)
            .map(|i| rng.gen::<f64>() < p[usize::from(prev[i / 2])])
            .collect()
    }

    /// Sample the whole tree.
    pub fn sample_tree(&self, rng: &mut dyn RngCore) -> TreeSample {
        // The root's sign is immaterial (sqrt(0) = 0); treat it as up.
        let mut signs = vec![vec![true]];
        for level in 1..=self.k {
            let next = Self::next_level(signs.last().unwrap(), level, rng);
            signs.push(next);
        }
        TreeSample {
            source: *self,
            signs,
        }
    }

    fn leaves_from_signs(&self, signs: &[bool]) -> Sequence {
        let (hi, lo) = (
            self.level_value(self.k, true),
            self.level_value(self.k, false),
        );
        Sequence::real(signs.iter().map(|&s| if s { hi } else { lo }).collect())
            .expect("leaves lie in [0, 1]")
    }
}

impl SequenceSource for AntiConcentrated {
    fn name(&self) -> String {
        format!("anti-concentrated(k={})", self.k)
    }

    fn len(&self) -> usize {
        1 << self.k
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Sequence {
        let mut level = vec![true];
        for j in 1..=self.k {
            level = Self::next_level(&level, j, rng);
        }
        self.leaves_from_signs(&level)
    }

    fn enumerate(&self) -> Result<Vec<Outcome>> {
        enumerate_anti_concentrated(self.k)
    }
}

/// A sampled tree: `signs[j][i]` is the sign of node `i` on level `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeSample {
    source: AntiConcentrated,
    signs: Vec<Vec<bool>>,
}

impl TreeSample {
    pub fn height(&self) -> u32 {
        self.source.k
    }

    pub fn delta(&self) -> f64 {
        self.source.delta()
    }

    /// Node values on level `j` (`2^j` entries).
    pub fn level(&self, j: u32) -> Vec<f64> {
        if j == 0 {
            return vec![0.5];
        }
        self.signs[j as usize]
            .iter()
            .map(|&s| self.source.level_value(j, s))
            .collect()
    }

    pub fn leaves(&self) -> Sequence {
        self.source
            .leaves_from_signs(&self.signs[self.source.k as usize])
    }
}

/// Exact outcome list for heights `1..=3`: all `2^(2^(k+1) - 2)` joint sign
/// choices of the non-root nodes, each weighted by the product of its
/// transition probabilities.
pub fn enumerate_anti_concentrated(k: u32) -> Result<Vec<Outcome>> {
    let source = anti_concentrated_source(k)?;
    if k > MAX_ENUMERATED_HEIGHT {
        return Err(Error::EnumerationGuard(format!(
            "tree height {k} exceeds the enumeration limit {MAX_ENUMERATED_HEIGHT}"
        )));
    }
    let nodes = (1usize << (k + 1)) - 2;
    let mut out = Vec::with_capacity(1 << nodes);
    for mask in 0u32..(1 << nodes) {
        // Bit b of the mask is the sign of the b-th non-root node in
        // breadth-first order.
        let mut prob = 1.0;
        let mut prev = vec![true];
        let mut bit = 0;
        for level in 1..=k {
            let mut cur = Vec::with_capacity(prev.len() * 2);
            for i in 0..prev.len() * 2 {
                let up = mask >> bit & 1 == 1;
                bit += 1;
                let p_up = AntiConcentrated::up_probability(level, prev[i / 2]);
                prob *= if up { p_up } else { 1.0 - p_up };
                cur.push(up);
            }
            prev = cur;
        }
        out.push((source.leaves_from_signs(&prev), prob));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;

    #[test]
    fn rejects_bad_heights() {
        assert!(anti_concentrated_source(0).is_err());
        assert!(matches!(
            enumerate_anti_concentrated(4),
            Err(Error::EnumerationGuard(_))
        ));
    }

    #[test]
    fn height_one_is_two_fair_coins() {
        let out = enumerate_anti_concentrated(1).unwrap();
        assert_eq!(out.len(), 4);
        let mut seqs: Vec<Vec<f64>> = out
            .iter()
            .map(|(s, _)| s.as_real().unwrap().to_vec())
            .collect();
        seqs.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        assert_eq!(
            seqs,
            vec![
                vec![0.0, 0.0],
                vec![0.0, 1.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0]
            ]
        );
        for (_, p) in &out {
            assert_eq!(*p, 0.25);
        }
    }

    #[test]
    fn enumeration_counts_and_mass() {
        for k in 1..=3 {
            let out = enumerate_anti_concentrated(k).unwrap();
            assert_eq!(out.len(), 1 << ((1 << (k + 1)) - 2));
            let total: f64 = out.iter().map(|(_, p)| p).sum();
            assert!((total - 1.0).abs() < 1e-12);
            assert!(out.iter().all(|(_, p)| *p > 0.0));
            // Every leaf has marginal mean 1/2.
            for leaf in 0..(1usize << k) {
                let mean: f64 = out
                    .iter()
                    .map(|(s, p)| p * s.as_real().unwrap()[leaf])
                    .sum();
                assert!((mean - 0.5).abs() < 1e-12, "k={k} leaf={leaf} mean={mean}");
            }
        }
    }

    #[test]
    fn transition_probabilities_are_martingale_steps() {
        for k in 1..=20u32 {
            let src = anti_concentrated_source(k).unwrap();
            let delta = src.delta();
            for j in 1..=k {
                for parent_up in [false, true] {
                    let p = AntiConcentrated::up_probability(j, parent_up);
                    assert!((0.0..=1.0).contains(&p));
                    let parent = if j == 1 {
                        0.5
                    } else {
                        src.level_value(j - 1, parent_up)
                    };
                    let (hi, lo) = (src.level_value(j, true), src.level_value(j, false));
                    let mean = p * hi + (1.0 - p) * lo;
                    assert!((mean - parent).abs() < 1e-12);
                    let var = p * (hi - mean).powi(2) + (1.0 - p) * (lo - mean).powi(2);
                    assert!((var - delta * delta).abs() < 1e-12, "k={k} j={j}");
                }
            }
        }
    }

    #[test]
    fn level_values_for_height_three() {
        let src = anti_concentrated_source(3).unwrap();
        let d = 1.0 / (2.0 * 3f64.sqrt());
        assert!((src.delta() - d).abs() < 1e-15);
        assert!((src.level_value(1, true) - (0.5 + d)).abs() < 1e-15);
        assert!((src.level_value(1, false) - (0.5 - d)).abs() < 1e-15);
        let tree = src.sample_tree(&mut rng_from_seed(3));
        assert_eq!(tree.level(0), vec![0.5]);
        for j in 1..=3 {
            let spread = (j as f64).sqrt() * d;
            for v in tree.level(j) {
                assert!(((v - 0.5).abs() - spread).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sampled_trees_satisfy_invariants() {
        let mut rng = rng_from_seed(11);
        for k in [1, 2, 5, 9] {
            let src = anti_concentrated_source(k).unwrap();
            let tree = src.sample_tree(&mut rng);
            assert_eq!(tree.level(k).len(), 1 << k);
            let leaves = tree.leaves();
            assert_eq!(leaves.len(), 1 << k);
            assert!(leaves
                .as_real()
                .unwrap()
                .iter()
                .all(|&v| v == 0.0 || v == 1.0));
        }
    }

    #[test]
    fn sample_matches_tree_leaves_for_same_stream() {
        let src = anti_concentrated_source(6).unwrap();
        let a = src.sample(&mut rng_from_seed(99));
        let b = src.sample_tree(&mut rng_from_seed(99)).leaves();
        assert_eq!(a, b);
    }

    #[test]
    fn empirical_child_mean_tracks_parent() {
        // Monte Carlo: for level-2 nodes, E[child | parent up] within 3 s.e.
        let src = anti_concentrated_source(4).unwrap();
        let mut rng = rng_from_seed(2024);
        let (mut sum, mut sum2, mut count) = (0.0, 0.0, 0usize);
        for _ in 0..100_000 {
            let tree = src.sample_tree(&mut rng);
            let parents = tree.level(1);
            let children = tree.level(2);
            for (i, &c) in children.iter().enumerate() {
                if parents[i / 2] > 0.5 {
                    sum += c;
                    sum2 += c * c;
                    count += 1;
                }
            }
        }
        let mean = sum / count as f64;
        let se = ((sum2 / count as f64 - mean * mean) / count as f64).sqrt();
        let parent = src.level_value(1, true);
        assert!(
            (mean - parent).abs() < 3.0 * se,
            "mean {mean} parent {parent} se {se}"
        );
    }
}
