use rand::{Rng, RngCore};

use super::{Outcome, SequenceSource};
use crate::error::{Error, Result};
use crate::game::Sequence;

pub fn constant(n: usize, value: f64) -> Result<Sequence> {
    Sequence::real(vec![value; n])
}

/// `0, 1, 0, 1, ...`
pub fn alternating(n: usize) -> Result<Sequence> {
    Sequence::real((0..n).map(|i| (i % 2) as f64).collect())
}

/// A deterministic source that always yields the same sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixed {
    name: String,
    sequence: Sequence,
}

impl Fixed {
    pub fn new(name: impl Into<String>, sequence: Sequence) -> Self {
        Self {
            name: name.into(),
            sequence,
        }
    }

    pub fn sequence(&self) -> &Sequence {
        &self.sequence
    }
}

impl SequenceSource for Fixed {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn len(&self) -> usize {
        self.sequence.len()
    }

    fn sample(&self, _rng: &mut dyn RngCore) -> Sequence {
        self.sequence.clone()
    }

    fn enumerate(&self) -> Result<Vec<Outcome>> {
        Ok(vec![(self.sequence.clone(), 1.0)])
    }
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptySequence)
    } else {
        Ok(())
    }
}

/// I.i.d. fair bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IidBits {
    n: usize,
}

impl IidBits {
    pub fn new(n: usize) -> Result<Self> {
        check_len(n)?;
        Ok(Self { n })
    }
}

impl SequenceSource for IidBits {
    fn name(&self) -> String {
        format!("iid-bits(n={})", self.n)
    }

    fn len(&self) -> usize {
        self.n
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Sequence {
        Sequence::real(
            (0..self.n)
                .map(|_| f64::from(u8::from(rng.gen::<bool>())))
                .collect(),
        )
        .expect("bits lie in [0, 1]")
    }
}

/// I.i.d. uniform reals in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IidReals {
    n: usize,
}

impl IidReals {
    pub fn new(n: usize) -> Result<Self> {
        check_len(n)?;
        Ok(Self { n })
    }
}

impl SequenceSource for IidReals {
    fn name(&self) -> String {
        format!("iid-reals(n={})", self.n)
    }

    fn len(&self) -> usize {
        self.n
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Sequence {
        Sequence::real((0..self.n).map(|_| rng.gen::<f64>()).collect())
            .expect("uniform draws lie in [0, 1)")
    }
}

/// I.i.d. uniform symbols from `0..alphabet`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IidSymbols {
    n: usize,
    alphabet: usize,
}

impl IidSymbols {
    pub fn new(n: usize, alphabet: usize) -> Result<Self> {
        check_len(n)?;
        if alphabet == 0 {
            return Err(Error::InvalidParameter("alphabet must be non-empty".into()));
        }
        Ok(Self { n, alphabet })
    }
}

impl SequenceSource for IidSymbols {
    fn name(&self) -> String {
        format!("iid-symbols(n={},alphabet={})", self.n, self.alphabet)
    }

    fn len(&self) -> usize {
        self.n
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Sequence {
        Sequence::symbols(
            (0..self.n)
                .map(|_| rng.gen_range(0..self.alphabet))
                .collect(),
            self.alphabet,
        )
        .expect("ids below alphabet")
    }
}
