//! Values produced by the evolution engines.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::units::Valley;

/// The two envelope components at one space-time point.
///
/// Each component is stored as its radial part; the full value at azimuth `phi` is
/// `radial * exp(i * order * phi)`. For circularly symmetric packets the orders are the
/// only place the azimuth enters, and they never affect the density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopePair {
    pub psi1: Complex64,
    pub psi2_radial: Complex64,
    pub psi1_order: i32,
    pub psi2_order: i32,
    pub valley: Valley,
    pub r: f64,
    pub t: f64,
}

impl EnvelopePair {
    pub fn density(&self) -> f64 {
        density(self)
    }

    /// Full component values at azimuth `phi`.
    pub fn at_azimuth(&self, phi: f64) -> (Complex64, Complex64) {
        let rot = |order: i32| Complex64::from_polar(1.0, f64::from(order) * phi);
        (self.psi1 * rot(self.psi1_order), self.psi2_radial * rot(self.psi2_order))
    }
}

/// rho = |Psi1|^2 + |Psi2|^2.
pub fn density(pair: &EnvelopePair) -> f64 {
    pair.psi1.norm_sqr() + pair.psi2_radial.norm_sqr()
}

/// Density sampled on a radial grid at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub t: f64,
    pub r_grid: Vec<f64>,
    pub rho: Vec<f64>,
}

impl DensityProfile {
    pub fn new(t: f64, r_grid: Vec<f64>, rho: Vec<f64>) -> Result<Self> {
        check_radial_grid(&r_grid)?;
        if rho.len() != r_grid.len() {
            return Err(Error::Domain(format!(
                "profile has {} radii but {} densities",
                r_grid.len(),
                rho.len()
            )));
        }
        if rho.iter().any(|&v| !(v >= 0.0)) {
            return Err(Error::Domain("densities must be finite and non-negative".into()));
        }
        Ok(Self { t, r_grid, rho })
    }

    pub fn max(&self) -> f64 {
        self.rho.iter().copied().fold(0.0, f64::max)
    }
}

/// Radial grids start at the origin and increase strictly.
pub fn check_radial_grid(r: &[f64]) -> Result<()> {
    if r.len() < 2 {
        return Err(Error::Domain("radial grid needs at least two points".into()));
    }
    if r[0] != 0.0 {
        return Err(Error::Domain(format!("radial grid must start at 0, starts at {}", r[0])));
    }
    if !r.windows(2).all(|w| w[0] < w[1]) || !r[r.len() - 1].is_finite() {
        return Err(Error::Domain("radial grid must be strictly increasing".into()));
    }
    Ok(())
}

/// `n` equally spaced radii on [0, r_max].
pub fn uniform_radii(r_max: f64, n: usize) -> Vec<f64> {
    let last = (n.max(2) - 1) as f64;
    (0..n.max(2)).map(|i| r_max * i as f64 / last).collect()
}
