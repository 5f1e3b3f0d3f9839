use std::fmt;

/// Exact checks allow this much numerical slack.
pub const EXACT_TOLERANCE: f64 = 1e-9;
/// Monte Carlo checks allow this many confidence half-widths of slack.
pub const CI_SLACK: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    AtMost,
    AtLeast,
    Equal,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Equal => "==",
        }
    }
}

/// A measured value compared against a bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub label: String,
    pub measured: f64,
    pub relation: Relation,
    pub bound: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn new(
        label: impl Into<String>,
        measured: f64,
        relation: Relation,
        bound: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            label: label.into(),
            measured,
            relation,
            bound,
            tolerance,
        }
    }

    /// Distance from failing; negative when the check fails.
    pub fn margin(&self) -> f64 {
        if self.measured.is_nan() {
            return f64::NEG_INFINITY;
        }
        match self.relation {
            Relation::AtMost => self.bound + self.tolerance - self.measured,
            Relation::AtLeast => self.measured - (self.bound - self.tolerance),
            Relation::Equal => self.tolerance - (self.measured - self.bound).abs(),
        }
    }

    pub fn pass(&self) -> bool {
        self.margin() >= 0.0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: measured {:.6e} {} bound {:.6e} (tolerance {:.1e})",
            if self.pass() { "PASS" } else { "FAIL" },
            self.label,
            self.measured,
            self.relation.symbol(),
            self.bound,
            self.tolerance
        )
    }
}
