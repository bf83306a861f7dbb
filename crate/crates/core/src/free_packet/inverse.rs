//! Recovery of C+(k), C-(k) from a circularly symmetric initial state.
//!
//! Inverting the radial synthesis gives
//!   C+ + C- = (1/2pi)  \int r Psi1(r, 0) J0(kr) dr
//!   C+ - C- = (1/2pi i) \int r Psi2_radial(r, 0) J1(kr) dr
//! which is the 2D Fourier transform with prefactor 1/(2 (2pi)^2).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::profile::{CoefficientProfile, TabulatedShape};
use crate::error::{Error, Result};
use crate::numerics::bessel::j01_nonneg;
use crate::numerics::quadrature::gauss_legendre;
use crate::numerics::Tabulated;
use crate::units::Valley;

/// Relative size of Psi2(0) above which the input cannot be of the symmetric form.
const ORIGIN_TOLERANCE: f64 = 1e-6;

/// \int table(r) w(r) dr over the sampled range, Gauss-Legendre on each sample interval
/// (the interpolant is smooth inside an interval, not across).
fn integrate_samples<W: Fn(f64) -> f64>(table: &Tabulated, weight: W) -> Complex64 {
    const ORDER: usize = 6;
    let unit = gauss_legendre(ORDER, -1.0, 1.0).expect("fixed order");
    let grid = table.grid();
    let mut acc = Complex64::new(0.0, 0.0);
    for w in grid.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for (&x, &wt) in unit.nodes.iter().zip(&unit.weights) {
            let r = mid + half * x;
            acc += table.eval(r) * (wt * half * weight(r));
        }
    }
    acc
}

/// Tabulated coefficients reproducing `psi1_0` and `psi2_0` (radial parts, Psi2 carrying
/// the valley's exp(+/- i phi)) when fed back through the radial engine at t = 0.
pub fn coefficients_from_initial(
    psi1_0: &Tabulated,
    psi2_0: &Tabulated,
    _valley: Valley,
    k_grid: &[f64],
) -> Result<CoefficientProfile> {
    for samples in [psi1_0, psi2_0] {
        if samples.start() != 0.0 {
            return Err(Error::Domain("initial-state samples must start at r = 0".into()));
        }
    }
    if k_grid.len() < 4 || k_grid[0] < 0.0 || !k_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Domain("k grid must be non-negative, increasing, with >= 4 points".into()));
    }

    let peak = psi1_0
        .values()
        .iter()
        .chain(psi2_0.values())
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    // an order-one azimuthal component must vanish on the axis
    if psi2_0.values()[0].norm() > ORIGIN_TOLERANCE * peak {
        return Err(Error::Unsupported(
            "Psi2(r = 0) is nonzero, so the state is not circularly symmetric in the expected form".into(),
        ));
    }

    let mut plus = Vec::with_capacity(k_grid.len());
    let mut minus = Vec::with_capacity(k_grid.len());
    for &k in k_grid {
        let (sum, diff) = if peak == 0.0 {
            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            let a = integrate_samples(psi1_0, |r| r * j01_nonneg(k * r).0);
            let b = integrate_samples(psi2_0, |r| r * j01_nonneg(k * r).1);
            (a / (2.0 * PI), b / Complex64::new(0.0, 2.0 * PI))
        };
        plus.push((sum + diff) * 0.5);
        minus.push((sum - diff) * 0.5);
    }
    let shape = TabulatedShape {
        plus: Tabulated::new(k_grid.to_vec(), plus)?,
        minus: Tabulated::new(k_grid.to_vec(), minus)?,
    };
    Ok(CoefficientProfile::tabulated(shape))
}
