//! Ring (off-centre radial maximum) detection on a density profile.

use crate::envelope::DensityProfile;
use crate::error::{Error, Result};

/// Default prominence threshold, as a fraction of the profile's global maximum.
pub const DEFAULT_PROMINENCE: f64 = 0.02;
/// Narrowest accepted ring, in grid steps.
const MIN_FWHM_STEPS: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingMetrics {
    pub index: usize,
    pub radius: f64,
    pub height: f64,
    pub fwhm: f64,
}

/// Maximum at the origin, reported apart from the rings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralPeak {
    pub height: f64,
    pub fwhm: Option<f64>,
}

/// Height of sample `i` above the higher of the lowest points reached on each side before
/// meeting a higher sample (or the grid end).
fn prominence(rho: &[f64], i: usize) -> f64 {
    let h = rho[i];
    let mut left_min = h;
    for j in (0..i).rev() {
        if rho[j] > h {
            break;
        }
        left_min = left_min.min(rho[j]);
    }
    let mut right_min = h;
    for &v in &rho[i + 1..] {
        if v > h {
            break;
        }
        right_min = right_min.min(v);
    }
    h - left_min.max(right_min)
}

/// Vertex of the parabola through three points (Newton form anchored at x0, x1).
fn parabolic_vertex(x: [f64; 3], y: [f64; 3]) -> (f64, f64) {
    let d01 = (y[1] - y[0]) / (x[1] - x[0]);
    let d12 = (y[2] - y[1]) / (x[2] - x[1]);
    let a = (d12 - d01) / (x[2] - x[0]);
    if a >= 0.0 {
        return (x[1], y[1]);
    }
    let xv = (0.5 * (x[0] + x[1]) - d01 / (2.0 * a)).clamp(x[0], x[2]);
    (xv, y[0] + d01 * (xv - x[0]) + a * (xv - x[0]) * (xv - x[1]))
}

/// First local minimum reached by walking downhill from `i` in direction `step`.
fn adjacent_minimum(rho: &[f64], i: usize, step: isize) -> usize {
    let mut j = i;
    loop {
        let next = j as isize + step;
        if next < 0 || next as usize >= rho.len() || rho[next as usize] > rho[j] {
            return j;
        }
        j = next as usize;
    }
}

/// Where the profile falls through `level` between the peak `i` and the index `stop`.
fn crossing(r: &[f64], rho: &[f64], i: usize, stop: usize, level: f64) -> f64 {
    let step: isize = if stop >= i { 1 } else { -1 };
    let mut j = i;
    while j != stop {
        let k = (j as isize + step) as usize;
        if rho[k] <= level {
            let frac = (rho[j] - level) / (rho[j] - rho[k]);
            return r[j] + frac * (r[k] - r[j]);
        }
        j = k;
    }
    r[stop]
}

fn width_at_half(r: &[f64], rho: &[f64], i: usize, height: f64) -> (f64, f64) {
    let lo = adjacent_minimum(rho, i, -1);
    let hi = adjacent_minimum(rho, i, 1);
    let baseline = if i == 0 { rho[hi] } else { rho[lo].max(rho[hi]) };
    let level = 0.5 * (height + baseline);
    let right = crossing(r, rho, i, hi, level);
    let left = if i == 0 { -right } else { crossing(r, rho, i, lo, level) };
    (right - left, baseline)
}

/// Off-centre maxima with prominence >= `min_prominence * max(rho)`, sorted by radius.
///
/// Radii and heights are refined by a three-point parabola; the width is taken at half the
/// height above the higher of the two neighbouring minima.
pub fn detect_rings(profile: &DensityProfile, min_prominence: f64) -> Result<Vec<RingMetrics>> {
    if !(min_prominence > 0.0 && min_prominence < 1.0) {
        return Err(Error::Domain(format!("prominence fraction must lie in (0, 1), got {min_prominence}")));
    }
    let (r, rho) = (&profile.r_grid, &profile.rho);
    if r.len() < 8 {
        return Err(Error::InsufficientData(format!("{} radial samples; need at least 8", r.len())));
    }
    let threshold = min_prominence * profile.max();
    let mut rings = Vec::new();
    for i in 1..rho.len() - 1 {
        if !(rho[i] > rho[i - 1] && rho[i] >= rho[i + 1]) || prominence(rho, i) < threshold {
            continue;
        }
        let (radius, height) = parabolic_vertex([r[i - 1], r[i], r[i + 1]], [rho[i - 1], rho[i], rho[i + 1]]);
        let (fwhm, _) = width_at_half(r, rho, i, height);
        let step = 0.5 * (r[i + 1] - r[i - 1]);
        if fwhm < MIN_FWHM_STEPS * step {
            return Err(Error::Resolution { radius, fwhm, step });
        }
        rings.push(RingMetrics {
            index: rings.len(),
            radius,
            height,
            fwhm,
        });
    }
    Ok(rings)
}

/// The maximum at r = 0, if the profile has one there.
pub fn central_peak(profile: &DensityProfile) -> Option<CentralPeak> {
    let rho = &profile.rho;
    if rho.len() < 2 || rho[0] < rho[1] {
        return None;
    }
    let (fwhm, baseline) = width_at_half(&profile.r_grid, rho, 0, rho[0]);
    Some(CentralPeak {
        height: rho[0],
        fwhm: (baseline < rho[0]).then_some(fwhm),
    })
}
