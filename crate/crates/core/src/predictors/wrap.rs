use rand::RngCore;

use super::{Decision, Predictor, Strategy, WeightedStrategy};
use crate::error::{Error, Result};
use crate::game::Window;

/// Runs a predictor built for `2^floor(log2 n)` on a sequence of length `n`,
/// showing it only the first `2^floor(log2 n)` observations. The guarantee
/// degrades from `1/log2 n` to `1/floor(log2 n)`.
#[derive(Clone, Debug)]
pub struct GeneralLength<P> {
    inner: P,
    n: usize,
}

pub fn wrap_general_length<P: Predictor>(inner: P, n: usize) -> Result<GeneralLength<P>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "general-length wrapper needs n >= 2, got {n}"
        )));
    }
    let k = usize::BITS - 1 - n.leading_zeros();
    let expected = 1usize << k;
    if inner.horizon() != expected {
        return Err(Error::InvalidParameter(format!(
            "inner predictor plays on {} observations but n = {n} needs {expected}",
            inner.horizon()
        )));
    }
    Ok(GeneralLength { inner, n })
}

impl<P> GeneralLength<P> {
    pub fn inner(&self) -> &P {
        &self.inner
    }
}

struct Truncated<'a> {
    inner: Box<dyn Strategy + 'a>,
    limit: usize,
}

impl Strategy for Truncated<'_> {
    fn step(&mut self, prefix: Window<'_>) -> Result<Decision> {
        let shown = prefix.len().min(self.limit);
        self.inner.step(prefix.slice(0..shown))
    }

    fn scale(&self) -> Option<u32> {
        self.inner.scale()
    }
}

impl<P: Predictor> Predictor for GeneralLength<P> {
    fn name(&self) -> String {
        format!("{}@n={}", self.inner.name(), self.n)
    }

    fn horizon(&self) -> usize {
        self.n
    }

    fn start(&self, rng: &mut dyn RngCore) -> Box<dyn Strategy + '_> {
        Box::new(Truncated {
            inner: self.inner.start(rng),
            limit: self.inner.horizon(),
        })
    }

    fn support(&self) -> Option<Vec<WeightedStrategy<'_>>> {
        let limit = self.inner.horizon();
        Some(
            self.inner
                .support()?
                .into_iter()
                .map(|(inner, p)| (Box::new(Truncated { inner, limit }) as Box<dyn Strategy>, p))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predictors::{selective_predictor, SelectivePredictor};
    use crate::statistics::StatisticFamily;

    #[test]
    fn picks_floor_log2() {
        let p = selective_predictor(StatisticFamily::mean(), 3).unwrap();
        let w = wrap_general_length(p.clone(), 12).unwrap();
        assert_eq!(w.horizon(), 12);
        assert_eq!(w.inner().horizon(), 8);
        assert!(wrap_general_length(p.clone(), 16).is_err());
        assert!(wrap_general_length(p.clone(), 7).is_err());
        let identity = wrap_general_length(p, 8).unwrap();
        assert_eq!(identity.support().unwrap().len(), 7);
        let one = SelectivePredictor::for_length(StatisticFamily::mean(), 2).unwrap();
        assert!(wrap_general_length(one, 1).is_err());
    }
}
