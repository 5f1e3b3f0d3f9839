//! Block means of one long anti-concentrated sample at two scales, with an
//! i.i.d. contrast that concentrates around 1/2.

use std::io::Write;

use selpred::seed::trial_rngs;
use selpred::sequences::{anti_concentrated_source, IidBits, SequenceSource};

use crate::error::{usage, CliResult};

pub const DEFAULT_FIGURE_K: u32 = 20;
pub const MIN_FIGURE_K: u32 = 16;
pub const MAX_FIGURE_K: u32 = 24;
/// Block lengths `2^10` and `2^15`.
pub const FIGURE_SCALES: [u32; 2] = [10, 15];
pub const FIGURE_BLOCKS: usize = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct FigureSeries {
    pub source: String,
    pub scale: usize,
    pub means: Vec<f64>,
}

/// Means of the first `count` non-overlapping blocks of length `scale`, or
/// of as many as fit.
pub fn block_means(x: &[f64], scale: usize, count: usize) -> Vec<f64> {
    x.chunks_exact(scale)
        .take(count)
        .map(|c| c.iter().sum::<f64>() / scale as f64)
        .collect()
}

/// Sample standard deviation (`n - 1` denominator); 0 for fewer than two values.
pub fn sample_std(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
}

pub fn figure_series(k: u32, seed: u64, contrast: bool) -> CliResult<Vec<FigureSeries>> {
    if !(MIN_FIGURE_K..=MAX_FIGURE_K).contains(&k) {
        return usage(format!(
            "figures need {MIN_FIGURE_K} <= k <= {MAX_FIGURE_K}, got {k}"
        ));
    }
    let mut sources: Vec<Box<dyn SequenceSource>> = vec![Box::new(anti_concentrated_source(k)?)];
    if contrast {
        sources.push(Box::new(IidBits::new(1 << k)?));
    }
    let mut out = Vec::new();
    for (i, source) in sources.iter().enumerate() {
        let (mut rng, _) = trial_rngs(seed, i as u64);
        let seq = source.sample(&mut rng);
        let x = seq.as_real().expect("real source");
        for s in FIGURE_SCALES {
            out.push(FigureSeries {
                source: source.name(),
                scale: 1 << s,
                means: block_means(x, 1 << s, FIGURE_BLOCKS),
            });
        }
    }
    Ok(out)
}

pub fn write_figures_csv<W: Write>(
    series: &[FigureSeries],
    k: u32,
    seed: u64,
    mut w: W,
) -> CliResult<()> {
    writeln!(w, "# k={k}")?;
    writeln!(w, "# seed={seed}")?;
    for s in series {
        writeln!(
            w,
            "# std[{} scale={}]={}",
            s.source,
            s.scale,
            sample_std(&s.means)
        )?;
    }
    writeln!(w, "source,scale,block,mean")?;
    for s in series {
        for (b, m) in s.means.iter().enumerate() {
            writeln!(w, "{},{},{},{}", s.source, s.scale, b, m)?;
        }
    }
    w.flush()?;
    Ok(())
}
