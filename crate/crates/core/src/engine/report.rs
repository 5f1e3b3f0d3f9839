use std::io::Write;

use crate::error::{Error, Result};

/// Normal quantile for a two-sided 95% interval.
pub const CI_Z: f64 = 1.96;

/// One CSV row. Monte Carlo rows carry their trial index; rows of an exact
/// expectation carry `trial = -1` and a probability-weighted `loss`, so the
/// loss column sums to the expectation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrialRecord {
    pub trial: i64,
    pub k_prime: Option<u32>,
    pub t: Option<usize>,
    pub m: Option<usize>,
    pub predicted: Option<f64>,
    pub actual: Option<f64>,
    pub loss: f64,
}

fn cell<T: std::fmt::Display>(value: Option<T>) -> String {
    value.map_or_else(String::new, |v| v.to_string())
}

/// Aggregated losses of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialReport {
    pub experiment: String,
    pub k: Option<u32>,
    pub n: usize,
    pub master_seed: u64,
    /// True when `mean` is an exact expectation rather than a sample mean.
    pub exact: bool,
    pub records: Vec<TrialRecord>,
    pub mean: f64,
    /// `1.96 * sample std / sqrt(trials)`; zero for exact reports.
    pub ci_half_width: f64,
}

impl TrialReport {
    /// Monte Carlo report; records are put in trial order before aggregation
    /// so the statistics do not depend on how the trials were scheduled.
    pub fn sampled(
        experiment: impl Into<String>,
        k: Option<u32>,
        n: usize,
        master_seed: u64,
        mut records: Vec<TrialRecord>,
    ) -> Self {
        records.sort_by_key(|r| r.trial);
        let count = records.len() as f64;
        let mean = if records.is_empty() {
            0.0
        } else {
            records.iter().map(|r| r.loss).sum::<f64>() / count
        };
        let ci_half_width = if records.len() < 2 {
            0.0
        } else {
            let var = records.iter().map(|r| (r.loss - mean).powi(2)).sum::<f64>() / (count - 1.0);
            CI_Z * var.sqrt() / count.sqrt()
        };
        Self {
            experiment: experiment.into(),
            k,
            n,
            master_seed,
            exact: false,
            records,
            mean,
            ci_half_width,
        }
    }

    /// Exact report from probability-weighted rows.
    pub fn exact(
        experiment: impl Into<String>,
        k: Option<u32>,
        n: usize,
        master_seed: u64,
        records: Vec<TrialRecord>,
    ) -> Self {
        let mean = records.iter().map(|r| r.loss).sum();
        Self {
            experiment: experiment.into(),
            k,
            n,
            master_seed,
            exact: true,
            records,
            mean,
            ci_half_width: 0.0,
        }
    }

    pub fn trials(&self) -> usize {
        self.records.len()
    }

    /// Combine two Monte Carlo reports over disjoint trial ranges of the
    /// same run.
    pub fn merge(self, other: TrialReport) -> Result<TrialReport> {
        if self.exact || other.exact {
            return Err(Error::InvalidParameter(
                "exact reports cannot be merged".into(),
            ));
        }
        if self.experiment != other.experiment
            || self.master_seed != other.master_seed
            || self.n != other.n
            || self.k != other.k
        {
            return Err(Error::InvalidParameter(
                "only reports of the same run can be merged".into(),
            ));
        }
        let mut records = self.records;
        records.extend(other.records);
        let report =
            TrialReport::sampled(self.experiment, self.k, self.n, self.master_seed, records);
        if report.records.windows(2).any(|w| w[0].trial == w[1].trial) {
            return Err(Error::InvalidParameter(
                "merged reports share trial indices".into(),
            ));
        }
        Ok(report)
    }

    /// Write `# key=value` metadata lines, then the rows with columns
    /// `experiment,k,n,trial,k_prime,t,m,predicted,actual,loss`.
    pub fn write_csv<W: Write>(&self, mut writer: W, metadata: &[(String, String)]) -> Result<()> {
        for (key, value) in metadata {
            writeln!(writer, "# {key}={value}")?;
        }
        writeln!(writer, "# master_seed={}", self.master_seed)?;
        writeln!(
            writer,
            "# mode={}",
            if self.exact { "exact" } else { "monte-carlo" }
        )?;
        writeln!(writer, "# mean={}", self.mean)?;
        writeln!(writer, "# ci_half_width={}", self.ci_half_width)?;
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(writer);
        w.write_record([
            "experiment",
            "k",
            "n",
            "trial",
            "k_prime",
            "t",
            "m",
            "predicted",
            "actual",
            "loss",
        ])?;
        for record in &self.records {
            w.write_record([
                self.experiment.clone(),
                cell(self.k),
                self.n.to_string(),
                record.trial.to_string(),
                cell(record.k_prime),
                cell(record.t),
                cell(record.m),
                cell(record.predicted),
                cell(record.actual),
                record.loss.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(trial: i64, loss: f64) -> TrialRecord {
        TrialRecord {
            trial,
            k_prime: None,
            t: None,
            m: None,
            predicted: None,
            actual: None,
            loss,
        }
    }

    #[test]
    fn statistics() {
        let r = TrialReport::sampled("x", None, 4, 0, vec![rec(1, 1.0), rec(0, 0.0)]);
        assert_eq!(r.mean, 0.5);
        assert_eq!(r.records[0].trial, 0);
        let s = (0.5f64).sqrt();
        assert!((r.ci_half_width - 1.96 * s / 2f64.sqrt()).abs() < 1e-15);
        let c = TrialReport::sampled("x", None, 4, 0, vec![rec(0, 0.0); 1]);
        assert_eq!((c.mean, c.ci_half_width), (0.0, 0.0));
    }

    #[test]
    fn merge_rules() {
        let a = TrialReport::sampled("x", Some(2), 4, 9, vec![rec(0, 0.2)]);
        let b = TrialReport::sampled("x", Some(2), 4, 9, vec![rec(1, 0.4)]);
        let m = a.clone().merge(b).unwrap();
        assert_eq!(m.trials(), 2);
        assert!((m.mean - 0.3).abs() < 1e-15);
        assert!(a.clone().merge(a.clone()).is_err());
        let other = TrialReport::sampled("y", Some(2), 4, 9, vec![rec(3, 0.4)]);
        assert!(a.merge(other).is_err());
    }

    #[test]
    fn csv_layout() {
        let mut r = TrialReport::exact("e", Some(1), 2, 5, vec![rec(-1, 0.25)]);
        r.records[0].k_prime = Some(1);
        r.records[0].t = Some(1);
        r.records[0].m = Some(1);
        r.records[0].predicted = Some(0.0);
        r.records[0].actual = Some(1.0);
        let mut buf = Vec::new();
        r.write_csv(&mut buf, &[("family".into(), "mean".into())])
            .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "# family=mean\n# master_seed=5\n# mode=exact\n# mean=0.25\n# ci_half_width=0\n\
             experiment,k,n,trial,k_prime,t,m,predicted,actual,loss\n\
             e,1,2,-1,1,1,1,0,1,0.25\n"
        );
    }
}
