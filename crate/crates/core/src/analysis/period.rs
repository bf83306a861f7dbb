//! Dominant oscillation period of a uniformly sampled trace.
//!
//! Two independent estimates: mean-subtracted zero-crossing spacing (with hysteresis, so
//! noise near zero does not create spurious crossings) and the peak of the windowed
//! spectrum, located on a padded FFT and then refined on the continuous transform.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

/// Relative disagreement above which the trace is flagged multi-modal.
pub const AGREEMENT: f64 = 0.05;
/// Below this many periods in the window the zero-crossing estimate is preferred.
const SHORT_TRACE_PERIODS: f64 = 5.0;
/// Hysteresis band, in standard deviations of the mean-subtracted trace.
const HYSTERESIS: f64 = 0.25;
const PADDING: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodEstimate {
    /// The reported period, fs.
    pub period: f64,
    pub zero_crossing: Option<f64>,
    pub spectral: f64,
    /// The two estimates disagree by more than [`AGREEMENT`].
    pub multimodal: bool,
}

fn check_uniform(t: &[f64]) -> Result<f64> {
    if t.len() < 8 {
        return Err(Error::InsufficientData(format!("{} samples; need at least 8", t.len())));
    }
    let dt = (t[t.len() - 1] - t[0]) / (t.len() - 1) as f64;
    if !(dt > 0.0) || t.windows(2).any(|w| ((w[1] - w[0]) - dt).abs() > 1e-6 * dt) {
        return Err(Error::Domain("trace must be uniformly sampled in increasing time".into()));
    }
    Ok(dt)
}

/// Times at which `x` changes sign, accepted only once the signal has left the band
/// [-band, band] on the other side.
fn crossings(t: &[f64], x: &[f64], band: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut state = 0i8;
    let mut last_sign_change = 0usize;
    for i in 0..x.len() {
        if i > 0 && (x[i] >= 0.0) != (x[i - 1] >= 0.0) {
            last_sign_change = i;
        }
        let now = if x[i] > band {
            1
        } else if x[i] < -band {
            -1
        } else {
            continue;
        };
        if state != 0 && now != state && last_sign_change > 0 {
            let j = last_sign_change;
            let frac = x[j - 1] / (x[j - 1] - x[j]);
            out.push(t[j - 1] + frac * (t[j] - t[j - 1]));
        }
        state = now;
    }
    out
}

/// |sum x_j w_j exp(-2 pi i f t_j)|^2 for a Hann window w.
fn power(t: &[f64], x: &[f64], f: f64) -> f64 {
    let n = x.len() as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, (&tj, &xj)) in t.iter().zip(x).enumerate() {
        let w = 0.5 - 0.5 * (2.0 * PI * j as f64 / (n - 1.0)).cos();
        acc += Complex64::from_polar(xj * w, -2.0 * PI * f * (tj - t[0]));
    }
    acc.norm_sqr()
}

fn spectral_peak(t: &[f64], x: &[f64], dt: f64) -> f64 {
    let n = x.len();
    let m = (n * PADDING).next_power_of_two();
    let mut buf: Vec<Complex64> = x
        .iter()
        .enumerate()
        .map(|(j, &v)| Complex64::new(v * (0.5 - 0.5 * (2.0 * PI * j as f64 / (n as f64 - 1.0)).cos()), 0.0))
        .collect();
    buf.resize(m, Complex64::new(0.0, 0.0));
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    // skip the bins the window smears the (removed) mean into
    let first = (2 * PADDING).min(m / 2 - 1);
    let best = (first..m / 2)
        .max_by(|&a, &b| buf[a].norm_sqr().total_cmp(&buf[b].norm_sqr()))
        .unwrap_or(first);
    let df = 1.0 / (m as f64 * dt);
    // golden-section search for the maximum within one bin either side
    let (mut a, mut b) = ((best as f64 - 1.0) * df, (best as f64 + 1.0) * df);
    let g = 0.5 * (5.0_f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut pc, mut pd) = (power(t, x, c), power(t, x, d));
    for _ in 0..60 {
        if pc > pd {
            b = d;
            d = c;
            pd = pc;
            c = b - g * (b - a);
            pc = power(t, x, c);
        } else {
            a = c;
            c = d;
            pc = pd;
            d = a + g * (b - a);
            pd = power(t, x, d);
        }
    }
    2.0 / (a + b)
}

/// Dominant period of `values(t)`.
pub fn dominant_period(t: &[f64], values: &[f64]) -> Result<PeriodEstimate> {
    if t.len() != values.len() {
        return Err(Error::Domain("time and value arrays differ in length".into()));
    }
    let dt = check_uniform(t)?;
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let x: Vec<f64> = values.iter().map(|v| v - mean).collect();
    let var = x.iter().map(|v| v * v).sum::<f64>() / n;
    if var <= 1e-12 * mean * mean || var == 0.0 {
        return Err(Error::FlatTrace);
    }

    let cross = crossings(t, &x, HYSTERESIS * var.sqrt());
    let zero_crossing = (cross.len() >= 3)
        .then(|| 2.0 * (cross[cross.len() - 1] - cross[0]) / (cross.len() - 1) as f64);
    let spectral = spectral_peak(t, &x, dt);

    let span = t[t.len() - 1] - t[0];
    let (period, multimodal) = match zero_crossing {
        Some(zc) => {
            let disagree = (zc - spectral).abs() > AGREEMENT * zc.min(spectral);
            let p = if span < SHORT_TRACE_PERIODS * zc { zc } else { spectral };
            (p, disagree)
        }
        None => (spectral, true),
    };
    Ok(PeriodEstimate {
        period,
        zero_crossing,
        spectral,
        multimodal,
    })
}
