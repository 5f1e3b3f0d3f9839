use std::ops::Range;

use rand::{Rng, RngCore};

use super::{Outcome, SequenceSource};
use crate::error::{Error, Result};
use crate::game::Sequence;

/// Enumeration refuses sources with more random blocks than this.
pub const MAX_ENUMERATED_BLOCKS: usize = 20;

/// Binary sequence made of constant blocks, each an independent fair bit.
/// Positions outside every block are fixed at 0.
///
/// Sampling draws one `bool` per block, in block order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAdversary {
    name: String,
    n: usize,
    blocks: Vec<Range<usize>>,
}

impl BlockAdversary {
    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    fn build(&self, bits: impl Fn(usize) -> bool) -> Sequence {
        let mut values = vec![0.0; self.n];
        for (b, range) in self.blocks.iter().enumerate() {
            if bits(b) {
                values[range.clone()].fill(1.0);
            }
        }
        Sequence::real(values).expect("bits lie in [0, 1]")
    }
}

impl SequenceSource for BlockAdversary {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn len(&self) -> usize {
        self.n
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Sequence {
        let bits: Vec<bool> = (0..self.blocks.len()).map(|_| rng.gen::<bool>()).collect();
        self.build(|b| bits[b])
    }

    fn enumerate(&self) -> Result<Vec<Outcome>> {
        let count = self.blocks.len();
        if count > MAX_ENUMERATED_BLOCKS {
            return Err(Error::EnumerationGuard(format!(
                "{} has {count} random blocks (limit {MAX_ENUMERATED_BLOCKS})",
                self.name
            )));
        }
        let p = 0.5f64.powi(count as i32);
        Ok((0u64..1 << count)
            .map(|mask| (self.build(|b| mask >> b & 1 == 1), p))
            .collect())
    }
}

/// Against a predictor that always commits at time `t`: zeros up to `t`, then
/// a single fair bit repeated to the end.
pub fn fixed_time_adversary(n: usize, t: usize) -> Result<BlockAdversary> {
    if t >= n {
        return Err(Error::InvalidParameter(format!(
            "prediction time {t} must be below the length {n}"
        )));
    }
    Ok(BlockAdversary {
        name: format!("fixed-time(n={n},t={t})"),
        n,
        blocks: std::iter::once(t..n).collect(),
    })
}

/// Against a predictor with fixed window length `m`: blocks of length
/// `ceil(m/2)`, the last one truncated when it does not divide `n`. Any
/// window of length `m` then contains a whole block.
pub fn block_adversary(n: usize, m: usize) -> Result<BlockAdversary> {
    if m == 0 || m > n {
        return Err(Error::InvalidParameter(format!(
            "window length {m} must lie in 1..={n}"
        )));
    }
    let width = m.div_ceil(2);
    let blocks = (0..n)
        .step_by(width)
        .map(|start| start..(start + width).min(n))
        .collect();
    Ok(BlockAdversary {
        name: format!("block(n={n},m={m})"),
        n,
        blocks,
    })
}

/// Against a predictor forced to predict the whole remaining tail: blocks of
/// sizes `n/2, n/4, ..., 1` followed by one more block of size 1 for the
/// final slot. For every `t`, some block inside `t..n` covers at least a
/// quarter of it.
pub fn halving_block_adversary(n: usize) -> Result<BlockAdversary> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "halving blocks need a power-of-two length >= 2, got {n}"
        )));
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut size = n / 2;
    while size >= 1 {
        blocks.push(start..start + size);
        start += size;
        size /= 2;
    }
    blocks.push(start..n);
    Ok(BlockAdversary {
        name: format!("halving-block(n={n})"),
        n,
        blocks,
    })
}
