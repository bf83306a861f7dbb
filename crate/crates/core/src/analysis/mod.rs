//! Quantitative features of computed densities: rings, their speed and width, centre-density
//! periods, and the total probability.

pub mod period;
pub mod rings;

use std::f64::consts::PI;

pub use period::{dominant_period, PeriodEstimate};
pub use rings::{central_peak, detect_rings, CentralPeak, RingMetrics, DEFAULT_PROMINENCE};

use crate::envelope::DensityProfile;
use crate::error::{Error, Result};
use crate::numerics::quadrature::trapezoid_end_corrected;

/// Density at the origin against time.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterTrace {
    pub t: Vec<f64>,
    pub rho0: Vec<f64>,
}

impl CenterTrace {
    pub fn new(t: Vec<f64>, rho0: Vec<f64>) -> Result<Self> {
        if t.len() != rho0.len() {
            return Err(Error::Domain(format!("{} times but {} densities", t.len(), rho0.len())));
        }
        if rho0.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::Domain("densities must be finite and non-negative".into()));
        }
        Ok(Self { t, rho0 })
    }

    pub fn dominant_period(&self) -> Result<PeriodEstimate> {
        dominant_period(&self.t, &self.rho0)
    }

    /// Indices of interior samples larger than both neighbours.
    pub fn local_maxima(&self) -> Vec<usize> {
        (1..self.rho0.len().saturating_sub(1))
            .filter(|&i| self.rho0[i] > self.rho0[i - 1] && self.rho0[i] > self.rho0[i + 1])
            .collect()
    }
}

/// Least-squares line through (t, radius) samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedFit {
    /// nm/fs.
    pub speed: f64,
    /// Radius extrapolated to t = 0, nm.
    pub intercept: f64,
    pub rms_residual: f64,
    pub max_residual: f64,
}

pub fn ring_speed(samples: &[(f64, f64)]) -> Result<SpeedFit> {
    if samples.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} ring positions; a speed fit needs at least 3",
            samples.len()
        )));
    }
    if !samples.windows(2).all(|w| w[0].0 < w[1].0) {
        return Err(Error::Domain("ring positions must be in increasing time".into()));
    }
    let n = samples.len() as f64;
    let tm = samples.iter().map(|s| s.0).sum::<f64>() / n;
    let rm = samples.iter().map(|s| s.1).sum::<f64>() / n;
    let sxx: f64 = samples.iter().map(|s| (s.0 - tm).powi(2)).sum();
    let sxy: f64 = samples.iter().map(|s| (s.0 - tm) * (s.1 - rm)).sum();
    let speed = sxy / sxx;
    let intercept = rm - speed * tm;
    let res: Vec<f64> = samples.iter().map(|s| s.1 - (intercept + speed * s.0)).collect();
    Ok(SpeedFit {
        speed,
        intercept,
        rms_residual: (res.iter().map(|v| v * v).sum::<f64>() / n).sqrt(),
        max_residual: res.iter().fold(0.0, |m, v| m.max(v.abs())),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityEstimate {
    pub total: f64,
    /// rho at the last radius over the profile maximum.
    pub tail_ratio: f64,
    /// The grid stops while the density is still above 1e-6 of its peak.
    pub truncated: bool,
}

/// \int rho 2 pi r dr over the profile's grid (end-corrected trapezoid).
pub fn total_probability(profile: &DensityProfile) -> Result<ProbabilityEstimate> {
    let r = &profile.r_grid;
    if r.len() < 4 {
        return Err(Error::InsufficientData("need at least 4 radii to integrate".into()));
    }
    let y: Vec<f64> = r.iter().zip(&profile.rho).map(|(r, rho)| 2.0 * PI * r * rho).collect();
    let peak = profile.max();
    let tail_ratio = if peak > 0.0 { profile.rho[r.len() - 1] / peak } else { 0.0 };
    Ok(ProbabilityEstimate {
        total: trapezoid_end_corrected(r, &y),
        tail_ratio,
        truncated: tail_ratio > 1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::uniform_radii;
    use proptest::prelude::*;

    #[test]
    fn speed_of_exact_lines() {
        let line: Vec<(f64, f64)> = (0..5).map(|i| (f64::from(i), f64::from(i) + 2.0)).collect();
        let fit = ring_speed(&line).unwrap();
        assert!((fit.speed - 1.0).abs() < 1e-14 && (fit.intercept - 2.0).abs() < 1e-13);
        assert!(fit.max_residual < 1e-13);
        let flat: Vec<(f64, f64)> = (0..5).map(|i| (f64::from(i), 7.0)).collect();
        assert_eq!(ring_speed(&flat).unwrap().speed, 0.0);
        assert!(matches!(ring_speed(&line[..2]), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn gaussian_total_probability() {
        let sigma: f64 = 2.4;
        let r = uniform_radii(15.0 * sigma, 801);
        let rho = r
            .iter()
            .map(|&x| (-x * x / (2.0 * sigma * sigma)).exp() / (2.0 * PI * sigma * sigma))
            .collect();
        let p = total_probability(&DensityProfile::new(0.0, r, rho).unwrap()).unwrap();
        assert!((p.total - 1.0).abs() < 1e-6 && !p.truncated);

        let r = uniform_radii(1.5 * sigma, 101);
        let rho = r.iter().map(|&x| (-x * x / (2.0 * sigma * sigma)).exp()).collect();
        assert!(total_probability(&DensityProfile::new(0.0, r, rho).unwrap()).unwrap().truncated);
    }

    #[test]
    fn center_trace_checks_and_maxima() {
        assert!(CenterTrace::new(vec![0.0], vec![]).is_err());
        assert!(CenterTrace::new(vec![0.0], vec![-1.0]).is_err());
        let c = CenterTrace::new(vec![0.0, 1.0, 2.0, 3.0, 4.0], vec![1.0, 0.0, 0.5, 0.2, 0.3]).unwrap();
        assert_eq!(c.local_maxima(), vec![2]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn speed_is_shift_invariant_and_scale_equivariant(
            v in -3.0f64..3.0, r0 in 0.0f64..50.0, shift in -1e3f64..1e3, scale in 0.1f64..10.0,
            wiggle in proptest::collection::vec(-0.5f64..0.5, 6)
        ) {
            let pts: Vec<(f64, f64)> = wiggle.iter().enumerate()
                .map(|(i, w)| (10.0 + 4.0 * i as f64, r0 + v * (10.0 + 4.0 * i as f64) + w)).collect();
            let base = ring_speed(&pts).unwrap().speed;
            let shifted: Vec<_> = pts.iter().map(|&(t, r)| (t + shift, r)).collect();
            let scaled: Vec<_> = pts.iter().map(|&(t, r)| (t * scale, r)).collect();
            prop_assert!((ring_speed(&shifted).unwrap().speed - base).abs() < 1e-8 * (1.0 + base.abs()));
            prop_assert!((ring_speed(&scaled).unwrap().speed - base / scale).abs() < 1e-9 * (1.0 + base.abs() / scale));
        }

        #[test]
        fn ring_radii_survive_a_small_baseline(c1 in 6.0f64..14.0, gap in 6.0f64..12.0, frac in 0.0f64..0.01) {
            let r = uniform_radii(40.0, 801);
            let f = |x: f64| (-(x - c1).powi(2) / 2.0).exp() + 0.6 * (-(x - c1 - gap).powi(2) / 3.0).exp();
            let rho: Vec<f64> = r.iter().map(|&x| f(x)).collect();
            let peak = rho.iter().copied().fold(0.0, f64::max);
            let lifted: Vec<f64> = rho.iter().map(|v| v + frac * peak).collect();
            let a = detect_rings(&DensityProfile::new(0.0, r.clone(), rho).unwrap(), DEFAULT_PROMINENCE).unwrap();
            let b = detect_rings(&DensityProfile::new(0.0, r.clone(), lifted).unwrap(), DEFAULT_PROMINENCE).unwrap();
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x.radius - y.radius).abs() < r[1]);
            }
        }
    }
}
