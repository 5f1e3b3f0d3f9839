//! Domain values shared by every other module.
//!
//! Time is 0-based: "predicting at time `t`" means exactly `t` observations
//! have been revealed, so `t` ranges over `0..n` and the prediction window is
//! the half-open index range `t..t + m`.

use std::ops::Range;

use crate::error::{Error, Result};

/// Squared loss `(predicted - actual)^2`.
pub fn squared_loss(predicted: f64, actual: f64) -> f64 {
    let d = predicted - actual;
    d * d
}

/// Absolute loss `|predicted - actual|`.
pub fn absolute_loss(predicted: f64, actual: f64) -> f64 {
    (predicted - actual).abs()
}

/// A single entry of a sequence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Observation {
    /// A real value in `[0, 1]`.
    Real(f64),
    /// A symbol id below the declared alphabet size.
    Symbol(usize),
}

#[derive(Clone, Debug, PartialEq)]
enum Items {
    Real(Vec<f64>),
    Symbol { ids: Vec<usize>, alphabet: usize },
}

/// A finite, non-empty sequence whose entries are either all real or all
/// symbolic. Validated on construction; real values are never clamped.
#[derive(Clone, Debug, PartialEq)]
pub struct Sequence {
    items: Items,
}

impl Sequence {
    pub fn real(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::OutOfUnitInterval { index, value });
        }
        Ok(Self {
            items: Items::Real(values),
        })
    }

    pub fn symbols(ids: Vec<usize>, alphabet: usize) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some((index, &symbol)) = ids.iter().enumerate().find(|(_, &s)| s >= alphabet) {
            return Err(Error::SymbolOutOfRange {
                index,
                symbol,
                alphabet,
            });
        }
        Ok(Self {
            items: Items::Symbol { ids, alphabet },
        })
    }

    pub fn len(&self) -> usize {
        match &self.items {
            Items::Real(v) => v.len(),
            Items::Symbol { ids, .. } => ids.len(),
        }
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, index: usize) -> Option<Observation> {
        match &self.items {
            Items::Real(v) => v.get(index).copied().map(Observation::Real),
            Items::Symbol { ids, .. } => ids.get(index).copied().map(Observation::Symbol),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Observation> + '_ {
        (0..self.len()).map(|i| self.get(i).expect("index in range"))
    }

    pub fn as_real(&self) -> Option<&[f64]> {
        match &self.items {
            Items::Real(v) => Some(v),
            Items::Symbol { .. } => None,
        }
    }

    pub fn as_symbols(&self) -> Option<&[usize]> {
        match &self.items {
            Items::Symbol { ids, .. } => Some(ids),
            Items::Real(_) => None,
        }
    }

    /// Alphabet size for symbol sequences.
    pub fn alphabet(&self) -> Option<usize> {
        match &self.items {
            Items::Symbol { alphabet, .. } => Some(*alphabet),
            Items::Real(_) => None,
        }
    }

    /// View of the contiguous range `range`. Panics if out of bounds.
    pub fn window(&self, range: Range<usize>) -> Window<'_> {
        match &self.items {
            Items::Real(v) => Window::Real(&v[range]),
            Items::Symbol { ids, .. } => Window::Symbol(&ids[range]),
        }
    }

    pub fn full(&self) -> Window<'_> {
        self.window(0..self.len())
    }
}

/// Borrowed contiguous run of observations. Predictors only ever receive the
/// revealed prefix as a `Window`, and statistic families evaluate `Window`s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Window<'a> {
    Real(&'a [f64]),
    Symbol(&'a [usize]),
}

impl<'a> Window<'a> {
    pub fn len(&self) -> usize {
        match self {
            Window::Real(v) => v.len(),
            Window::Symbol(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sub-window. Panics if out of bounds.
    pub fn slice(&self, range: Range<usize>) -> Window<'a> {
        match self {
            Window::Real(v) => Window::Real(&v[range]),
            Window::Symbol(v) => Window::Symbol(&v[range]),
        }
    }

    pub fn as_real(&self) -> Result<&'a [f64]> {
        match self {
            Window::Real(v) => Ok(v),
            Window::Symbol(_) => Err(Error::KindMismatch { expected: "real" }),
        }
    }

    pub fn as_symbols(&self) -> Result<&'a [usize]> {
        match self {
            Window::Symbol(v) => Ok(v),
            Window::Real(_) => Err(Error::KindMismatch { expected: "symbol" }),
        }
    }
}

/// What a commitment claims about its window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Payload {
    /// Predicted value of the statistic on the window.
    Value(f64),
    /// Index of the model claimed to minimize risk on the window.
    Model(usize),
}

/// A prediction event: after `t` observations, a claim about `x[t..t + m]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Commitment {
    t: usize,
    m: usize,
    payload: Payload,
}

impl Commitment {
    /// Rejects anything outside `0 <= t < n`, `1 <= m <= n - t`.
    pub fn new(n: usize, t: usize, m: usize, payload: Payload) -> Result<Self> {
        if t >= n || m == 0 || m > n - t {
            return Err(Error::InvalidCommitment { t, m, n });
        }
        Ok(Self { t, m, payload })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn payload(&self) -> Payload {
        self.payload
    }

    /// Index range of the predicted window.
    pub fn window(&self) -> Range<usize> {
        self.t..self.t + self.m
    }
}

/// How a commitment is scored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LossKind {
    Squared,
    Absolute,
    /// Average loss of the chosen model on the window minus the best model's.
    ExcessRisk,
}

impl LossKind {
    /// Score `predicted` against `actual`. For excess risk `predicted` is the
    /// chosen model's window risk and `actual` the best model's window risk.
    pub fn apply(self, predicted: f64, actual: f64) -> f64 {
        match self {
            LossKind::Squared => squared_loss(predicted, actual),
            LossKind::Absolute => absolute_loss(predicted, actual),
            LossKind::ExcessRisk => predicted - actual,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LossKind::Squared => "squared",
            LossKind::Absolute => "absolute",
            LossKind::ExcessRisk => "excess-risk",
        }
    }
}

/// Outcome of one game.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GameResult {
    pub commitment: Commitment,
    pub kind: LossKind,
    /// The predicted value, or the chosen model's risk on the window.
    pub predicted: f64,
    /// The realized statistic, or the best achievable risk on the window.
    pub actual: f64,
    pub loss: f64,
}

impl GameResult {
    /// Recompute the loss from `predicted` and `actual`.
    pub fn recomputed_loss(&self) -> f64 {
        self.kind.apply(self.predicted, self.actual)
    }
}
