use crate::error::{Error, Result};
use crate::game::Sequence;
use crate::statistics::ModelClass;

/// Loss of model `i` (1-based) on symbol `x` in the hard instance of height
/// `k`: 1 when `floor(x / 2^(i-1))` is odd, otherwise `i * eps` with
/// `eps = 1 / (4k)`.
pub fn erm_hard_loss(k: u32, i: u32, x: usize) -> f64 {
    let eps = 1.0 / (4.0 * f64::from(k));
    if (x >> (i - 1)) & 1 == 1 {
        1.0
    } else {
        f64::from(i) * eps
    }
}

/// Model class of size `k` over symbols `0..2^k` and the sequence
/// `0, 1, ..., 2^k - 1` on which the halving ERM predictor always picks the
/// model matching its scale and pays a constant excess risk.
pub fn erm_hard_instance(k: u32) -> Result<(ModelClass, Sequence)> {
    if !(2..=24).contains(&k) {
        return Err(Error::InvalidParameter(format!(
            "hard ERM instance needs 2 <= k <= 24, got {k}"
        )));
    }
    let n = 1usize << k;
    let tables = (1..=k)
        .map(|i| (0..n).map(|x| erm_hard_loss(k, i, x)).collect())
        .collect();
    Ok((
        ModelClass::new(tables)?,
        Sequence::symbols((0..n).collect(), n)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_level_tables() {
        let (class, seq) = erm_hard_instance(3).unwrap();
        let e = 1.0 / 12.0;
        assert_eq!(class.table(0), &[e, 1.0, e, 1.0, e, 1.0, e, 1.0]);
        assert_eq!(
            class.table(1),
            &[2.0 * e, 2.0 * e, 1.0, 1.0, 2.0 * e, 2.0 * e, 1.0, 1.0]
        );
        assert_eq!(
            class.table(2),
            &[3.0 * e, 3.0 * e, 3.0 * e, 3.0 * e, 1.0, 1.0, 1.0, 1.0]
        );
        assert_eq!(seq.as_symbols().unwrap(), &[0, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn two_level_tables_by_hand() {
        let (class, _) = erm_hard_instance(2).unwrap();
        let e = 1.0 / 8.0;
        assert_eq!(class.table(0), &[e, 1.0, e, 1.0]);
        assert_eq!(class.table(1), &[2.0 * e, 2.0 * e, 1.0, 1.0]);
    }

    #[test]
    fn rejects_small_heights() {
        assert!(erm_hard_instance(1).is_err());
    }

    #[test]
    fn half_window_averages_and_unique_minimizer() {
        for k in 2..=8u32 {
            let (class, seq) = erm_hard_instance(k).unwrap();
            let x = seq.as_symbols().unwrap();
            let eps = 1.0 / (4.0 * f64::from(k));
            for kp in 1..=k {
                let h = 1usize << (kp - 1);
                for t in (0..x.len()).step_by(2 * h) {
                    let first = &x[t..t + h];
                    let second = &x[t + h..t + 2 * h];
                    let i = (kp - 1) as usize;
                    let a = class.average_loss(i, first).unwrap();
                    let b = class.average_loss(i, second).unwrap();
                    assert!((a - f64::from(kp) * eps).abs() < 1e-12);
                    assert_eq!(b, 1.0);
                    for lower in 1..kp {
                        let want = (f64::from(lower) * eps + 1.0) / 2.0;
                        let got = class.average_loss((lower - 1) as usize, first).unwrap();
                        assert!((got - want).abs() < 1e-12);
                    }
                    let losses = class.average_losses(first).unwrap();
                    let strictly_best = losses
                        .iter()
                        .enumerate()
                        .all(|(j, &l)| j == i || l > losses[i]);
                    assert!(strictly_best, "k={k} k'={kp} t={t}");
                }
            }
        }
    }
}
