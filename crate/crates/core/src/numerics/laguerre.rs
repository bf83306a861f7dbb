//! Terminating confluent hypergeometric series F(-n, gamma, z) for gamma in {1, 2}.
//!
//! F(-n, 1, z) = L_n(z) and F(-n, 2, z) = L_n^(1)(z) / (n + 1). Both are evaluated by the
//! forward three-term Laguerre recurrence; the alternating factorial series cancels badly
//! once n*z is large.

use crate::error::{Error, Result};

/// Largest polynomial degree accepted anywhere in the crate.
pub const MAX_DEGREE: usize = 512;

pub fn confluent_f(n: i64, gamma: i64, z: f64) -> Result<f64> {
    if n < 0 {
        return Err(Error::Domain(format!("F(-n, gamma, z) needs n >= 0, got {n}")));
    }
    let n = n as usize;
    if n > MAX_DEGREE {
        return Err(Error::Domain(format!("degree {n} exceeds cap {MAX_DEGREE}")));
    }
    if !z.is_finite() || z < 0.0 {
        return Err(Error::Domain(format!("F(-n, gamma, z) needs finite z >= 0, got {z}")));
    }
    match gamma {
        1 => Ok(laguerre(n, 0.0, z)),
        2 => Ok(laguerre(n, 1.0, z) / (n as f64 + 1.0)),
        _ => Err(Error::Unsupported(format!("gamma = {gamma}; only 1 and 2 are implemented"))),
    }
}

/// Generalized Laguerre polynomial L_n^(alpha)(z) by forward recurrence.
pub(crate) fn laguerre(n: usize, alpha: f64, z: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - z;
    for k in 1..n {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - z) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Fills `out[k] = exp(-z/2) * L_k^(alpha)(z)` for `k = 0..out.len()`.
///
/// The recurrence runs on unscaled values with a tracked log-scale so that neither
/// `L_k(z)` (overflow for large z) nor `exp(-z/2)` (underflow) is ever formed alone.
pub(crate) fn scaled_laguerre_sequence(alpha: f64, z: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    const BIG: f64 = 1e150;
    let mut log_scale = -0.5 * z;
    let mut prev = 1.0_f64;
    let mut cur = 1.0 + alpha - z;
    let emit = |v: f64, log_scale: f64| {
        if v == 0.0 {
            0.0
        } else {
            v.signum() * (v.abs().ln() + log_scale).exp()
        }
    };
    out[0] = emit(prev, log_scale);
    if out.len() == 1 {
        return;
    }
    out[1] = emit(cur, log_scale);
    for k in 1..out.len() - 1 {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - z) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            prev /= BIG;
            cur /= BIG;
            log_scale += BIG.ln();
        }
        out[k + 1] = emit(cur, log_scale);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct terminating series 1 + sum_j (-n)_j / ((gamma)_j j!) z^j, with the sum of
    /// absolute terms as its cancellation scale.
    fn series_oracle(n: usize, gamma: f64, z: f64) -> (f64, f64) {
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut abs_sum = 1.0;
        for j in 0..n {
            let j = j as f64;
            term *= (-(n as f64) + j) / ((gamma + j) * (j + 1.0)) * z;
            sum += term;
            abs_sum += term.abs();
        }
        (sum, abs_sum)
    }

    #[test]
    fn small_cases() {
        assert_eq!(confluent_f(0, 1, 3.7).unwrap(), 1.0);
        assert_eq!(confluent_f(1, 1, 2.0).unwrap(), -1.0);
        assert!((confluent_f(2, 1, 1.0).unwrap() + 0.5).abs() < 1e-15);
        assert_eq!(confluent_f(0, 2, 9.0).unwrap(), 1.0);
        // F(-1, 2, z) = 1 - z/2
        assert!((confluent_f(1, 2, 3.0).unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn matches_series_where_series_is_stable() {
        for n in 0..=20 {
            for &z in &[0.0, 0.1, 0.5, 1.3, 2.0, 4.5] {
                for gamma in 1..=2 {
                    let got = confluent_f(n, gamma, z).unwrap();
                    let (want, scale) = series_oracle(n as usize, gamma as f64, z);
                    assert!((got - want).abs() <= 1e-12 * scale, "n={n} g={gamma} z={z}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(matches!(confluent_f(-1, 1, 1.0), Err(Error::Domain(_))));
        assert!(matches!(confluent_f(3, 3, 1.0), Err(Error::Unsupported(_))));
        assert!(matches!(confluent_f(513, 1, 1.0), Err(Error::Domain(_))));
        assert!(matches!(confluent_f(3, 1, -0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn scaled_sequence_matches_direct() {
        let mut buf = vec![0.0; 40];
        for &z in &[0.0, 0.7, 5.0, 33.0, 120.0] {
            for &alpha in &[0.0, 1.0] {
                scaled_laguerre_sequence(alpha, z, &mut buf);
                for (k, &v) in buf.iter().enumerate() {
                    let want = (-0.5 * z).exp() * laguerre(k, alpha, z);
                    assert!((v - want).abs() <= 1e-12 * want.abs().max(1e-300) + 1e-300, "k={k} z={z}");
                }
            }
        }
    }

    #[test]
    fn scaled_sequence_survives_extreme_arguments() {
        // exp(-z/2) alone underflows here; the scaled values must stay bounded by
        // the Szego-type bound |exp(-z/2) L_n(z)| <= 1.
        let mut buf = vec![0.0; 513];
        scaled_laguerre_sequence(0.0, 1800.0, &mut buf);
        assert!(buf.iter().all(|v| v.is_finite() && v.abs() <= 1.0 + 1e-9));
        assert!(buf[512].abs() > 0.0);
    }
}
