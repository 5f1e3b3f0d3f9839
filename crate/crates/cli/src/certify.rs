use std::fs::File;
use std::io::{BufWriter, Write};

use selpred::engine::{certify_source, VarianceCertificate, WindowConstraint};
use selpred::sequences::{
    anti_concentrated_source, block_adversary, fixed_time_adversary, halving_block_adversary,
    SequenceSource,
};

use crate::check::{Check, Relation, EXACT_TOLERANCE};
use crate::config::ExperimentConfig;
use crate::error::{usage, CliResult};

pub struct CertifyOutcome {
    pub source: String,
    pub constraint: WindowConstraint,
    pub certificate: VarianceCertificate,
    pub check: Check,
}

/// Enumerate an adversarial source and lower-bound every predictor allowed
/// by the constraint through the smallest conditional variance.
pub fn certify(cfg: &ExperimentConfig) -> CliResult<CertifyOutcome> {
    let source_name = cfg.source.as_deref().unwrap_or("anti-concentrated");
    let (k, n) = cfg.k_and_n(3)?;
    let t = cfg.t.unwrap_or(n / 2);
    let m = cfg.m.unwrap_or(n / 2);
    let (source, default_constraint, bound, formula): (Box<dyn SequenceSource>, _, f64, &str) =
        match source_name {
            "anti-concentrated" => {
                let Some(k) = k else {
                    return usage("anti-concentrated needs n = 2^k");
                };
                let src = anti_concentrated_source(k)?;
                (Box::new(src), WindowConstraint::All, 1.0 / (64.0 * f64::from(k)), "1/(64k)")
            }
            "fixed-time" => (Box::new(fixed_time_adversary(n, t)?), WindowConstraint::FixedTime(t), 0.25, "1/4"),
            "block" => (Box::new(block_adversary(n, m)?), WindowConstraint::FixedWindow(m), 1.0 / 64.0, "1/64"),
            "halving-block" => (Box::new(halving_block_adversary(n)?), WindowConstraint::TailOnly, 1.0 / 64.0, "1/64"),
            other => {
                return usage(format!(
                    "certify needs an enumerable adversary (anti-concentrated, fixed-time, block, halving-block), got '{other}'"
                ))
            }
        };
    let constraint = match cfg.constraint.as_deref() {
        None => default_constraint,
        Some("all") => WindowConstraint::All,
        Some("fixed-time") => WindowConstraint::FixedTime(t),
        Some("fixed-window") => WindowConstraint::FixedWindow(m),
        Some("tail-only") => WindowConstraint::TailOnly,
        Some(other) => return usage(format!("unknown constraint '{other}'")),
    };
    let certificate = certify_source(source.as_ref(), constraint)?;
    let check = Check::new(
        format!("certify {} ({constraint:?}) >= {formula}", source.name()),
        certificate.min_variance,
        Relation::AtLeast,
        bound,
        EXACT_TOLERANCE,
    );
    let outcome = CertifyOutcome {
        source: source.name(),
        constraint,
        certificate,
        check,
    };
    if let Some(path) = &cfg.out {
        write_certificate_csv(&outcome, BufWriter::new(File::create(path)?))?;
    }
    Ok(outcome)
}

pub fn write_certificate_csv<W: Write>(outcome: &CertifyOutcome, mut w: W) -> CliResult<()> {
    let c = &outcome.certificate;
    writeln!(w, "# source={}", outcome.source)?;
    writeln!(w, "# constraint={:?}", outcome.constraint)?;
    writeln!(w, "# n={}", c.n)?;
    writeln!(w, "# min_variance={}", c.min_variance)?;
    writeln!(w, "# argmin_t={}", c.argmin.0)?;
    writeln!(w, "# argmin_m={}", c.argmin.1)?;
    writeln!(w, "# argmin_prefix_id={}", c.argmin.2)?;
    writeln!(w, "# bound={}", outcome.check.bound)?;
    writeln!(w, "t,m,prefix_id,probability,variance")?;
    for r in &c.rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.t, r.m, r.prefix_id, r.probability, r.variance
        )?;
    }
    w.flush()?;
    Ok(())
}
