//! Wave packets in a perpendicular magnetic field, expanded in symmetric-gauge Landau states.
//!
//! The initial state is a Gaussian of width sigma on the sublattice that carries no angular
//! momentum; its overlap with each level is real and equal for both energy signs, so the
//! evolution is a pair of discrete sums with exact phases exp(-+i omega_n t).

pub mod eigen;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

pub use eigen::{eigen_frequency, eigenfunction, magnetic_length, period_t1, LandauBasis};

use crate::envelope::{check_radial_grid, DensityProfile, EnvelopePair};
use crate::error::{Error, Result};
use crate::numerics::laguerre::MAX_DEGREE;
use crate::numerics::quadrature::gauss_legendre;
use crate::units::Valley;

/// Default initial width, nm.
pub const DEFAULT_SIGMA: f64 = 24.0;
/// Default tail tolerance on the captured weight.
pub const DEFAULT_EPSILON: f64 = 1e-8;
/// Gauss-Legendre nodes per panel for the overlap integrals.
const OVERLAP_NODES: usize = 400;
/// The overlap range reaches this many sigma, where exp(-r^2/4 sigma^2) ~ 1e-21.
const OVERLAP_SIGMAS: f64 = 14.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauParams {
    pub b_field: f64,
    pub l: f64,
    pub valley: Valley,
    pub sigma: f64,
    pub beta: f64,
}

impl LandauParams {
    pub fn new(sigma: f64, b_field: f64, valley: Valley) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::Domain(format!("sigma must be positive, got {sigma} nm")));
        }
        let l = magnetic_length(b_field)?;
        Ok(Self {
            b_field,
            l,
            valley,
            sigma,
            beta: sigma / l,
        })
    }
}

/// Truncated level expansion of the Gaussian initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct LandauExpansion {
    pub c_plus: Vec<f64>,
    pub c_minus: Vec<f64>,
    pub params: LandauParams,
    pub captured_weight: f64,
}

/// Overlaps C(n) = (sqrt(2 pi)/sigma) \int r exp(-r^2/4 sigma^2) psi2(n) dr for n < levels.
fn overlaps(params: &LandauParams, levels: usize) -> Result<Vec<f64>> {
    let (sigma, l) = (params.sigma, params.l);
    let top = (levels.max(1) - 1) as f64;
    let r_max = (OVERLAP_SIGMAS * sigma).max(l * (8.0 * top + 12.0).sqrt());
    let panels = 1 + levels / 64;
    let unit = gauss_legendre(OVERLAP_NODES, 0.0, 1.0)?;
    let h = r_max / panels as f64;
    let pref = (2.0 * PI).sqrt() / sigma;
    let mut acc = vec![0.0; levels];
    for p in 0..panels {
        for (&x, &w) in unit.nodes.iter().zip(&unit.weights) {
            let r = h * (p as f64 + x);
            let gauss = (-r * r / (4.0 * sigma * sigma)).exp();
            if gauss == 0.0 {
                continue;
            }
            let basis = LandauBasis::at(r, l, levels)?;
            let weight = w * h * pref * r * gauss;
            for (a, &g) in acc.iter_mut().zip(&basis.lower) {
                *a += weight * g;
            }
        }
    }
    Ok(acc)
}

/// Expansion of Psi(r, 0) = (0, exp(-r^2/4 sigma^2) / (sqrt(2 pi) sigma)) (K ordering),
/// truncated at the first level count whose captured weight reaches 1 - epsilon.
pub fn gaussian_coefficients(params: &LandauParams, epsilon: f64) -> Result<LandauExpansion> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!("tail tolerance must lie in (0, 1), got {epsilon}")));
    }
    let target = 1.0 - epsilon;
    let mut levels = 64;
    loop {
        let c = overlaps(params, levels)?;
        let mut weight = 0.0;
        for (n, &cn) in c.iter().enumerate() {
            weight += 2.0 * cn * cn;
            if weight >= target {
                let kept = c[..=n].to_vec();
                return Ok(LandauExpansion {
                    c_minus: kept.clone(),
                    c_plus: kept,
                    params: *params,
                    captured_weight: weight,
                });
            }
        }
        if levels > MAX_DEGREE {
            return Err(Error::Truncation {
                captured: weight,
                target,
                cap: MAX_DEGREE,
            });
        }
        levels = (2 * levels).min(MAX_DEGREE + 1);
    }
}

impl LandauExpansion {
    pub fn levels(&self) -> usize {
        self.c_plus.len()
    }

    /// Radius beyond which every retained level has decayed: the classical turning point
    /// of the highest level plus a margin of several magnetic lengths.
    pub fn support_radius(&self) -> f64 {
        let top = (self.levels() - 1) as f64;
        self.params.l * ((8.0 * top + 4.0).sqrt() + 6.0)
    }

    pub fn basis_at(&self, r: f64) -> Result<LandauBasis> {
        LandauBasis::at(r, self.params.l, self.levels())
    }

    /// Sums the series on a precomputed basis; lets time sweeps reuse one basis per radius.
    pub fn evolve_on(&self, basis: &LandauBasis, t: f64) -> EnvelopePair {
        let w_unit = (2.0_f64).sqrt() / self.params.l;
        let mut f = Complex64::new(0.0, 0.0);
        let mut g = Complex64::new(0.0, 0.0);
        for n in 0..self.levels().min(basis.levels()) {
            let phase = Complex64::from_polar(1.0, -w_unit * (n as f64).sqrt() * t);
            let (cp, cm) = (self.c_plus[n], self.c_minus[n]);
            let fwd = phase * cp;
            let back = phase.conj() * cm;
            g += (fwd + back) * basis.lower[n];
            f += (fwd - back) * basis.upper[n];
        }
        eigen::arrange(f * Complex64::i(), g, self.params.valley, basis.r, t)
    }

    pub fn evolve(&self, r: f64, t: f64) -> Result<EnvelopePair> {
        Ok(self.evolve_on(&self.basis_at(r)?, t))
    }

    pub fn density(&self, r: f64, t: f64) -> Result<f64> {
        self.evolve(r, t).map(|p| p.density())
    }

    pub fn density_profile(&self, r_grid: &[f64], t: f64) -> Result<DensityProfile> {
        Ok(self.density_profiles(r_grid, &[t])?.remove(0))
    }

    /// One profile per time; each radius builds its basis once.
    pub fn density_profiles(&self, r_grid: &[f64], t_list: &[f64]) -> Result<Vec<DensityProfile>> {
        check_radial_grid(r_grid)?;
        let columns: Vec<Vec<f64>> = r_grid
            .par_iter()
            .map(|&r| {
                let basis = self.basis_at(r)?;
                Ok(t_list.iter().map(|&t| self.evolve_on(&basis, t).density()).collect())
            })
            .collect::<Result<_>>()?;
        t_list
            .iter()
            .enumerate()
            .map(|(i, &t)| DensityProfile::new(t, r_grid.to_vec(), columns.iter().map(|c| c[i]).collect()))
            .collect()
    }

    /// \int rho 2 pi r dr at each time, by 16-point Gauss-Legendre on panels of L/4 out to
    /// the support radius. The basis is built once per node and the phases once per time.
    pub fn total_probabilities(&self, t_list: &[f64]) -> Result<Vec<f64>> {
        let r_max = self.support_radius();
        let panels = (4.0 * r_max / self.params.l).ceil() as usize;
        let h = r_max / panels as f64;
        let rule = gauss_legendre(16, 0.0, h)?;
        let nodes: Vec<(f64, LandauBasis)> = (0..panels)
            .flat_map(|p| rule.nodes.iter().zip(&rule.weights).map(move |(&x, &w)| (p as f64 * h + x, w)))
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&(r, w)| Ok((w * 2.0 * PI * r, self.basis_at(r)?)))
            .collect::<Result<_>>()?;
        let w_unit = (2.0_f64).sqrt() / self.params.l;
        Ok(t_list
            .par_iter()
            .map(|&t| {
                let (fwd, back): (Vec<Complex64>, Vec<Complex64>) = (0..self.levels())
                    .map(|n| {
                        let phase = Complex64::from_polar(1.0, -w_unit * (n as f64).sqrt() * t);
                        (phase * self.c_plus[n], phase.conj() * self.c_minus[n])
                    })
                    .unzip();
                nodes
                    .iter()
                    .map(|(weight, basis)| {
                        let mut f = Complex64::new(0.0, 0.0);
                        let mut g = Complex64::new(0.0, 0.0);
                        for n in 0..fwd.len() {
                            g += (fwd[n] + back[n]) * basis.lower[n];
                            f += (fwd[n] - back[n]) * basis.upper[n];
                        }
                        weight * (f.norm_sqr() + g.norm_sqr())
                    })
                    .sum()
            })
            .collect())
    }

    /// rho(r, t) for every t at a fixed radius.
    pub fn trace_at(&self, r: f64, t_list: &[f64]) -> Result<Vec<f64>> {
        let basis = self.basis_at(r)?;
        Ok(t_list.par_iter().map(|&t| self.evolve_on(&basis, t).density()).collect())
    }

    /// Keeps only the n = 0 and n = 1 contributions to rho and drops their square terms in
    /// n = 1: 4 C(0)^2 psi2(0)^2 + 8 C(0) C(1) psi2(0) psi2(1) cos(omega_1 t).
    pub fn two_term_density(&self, r: f64, t: f64) -> Result<f64> {
        let basis = LandauBasis::at(r, self.params.l, 2)?;
        let c0 = self.c_plus[0];
        let c1 = self.c_plus.get(1).copied().unwrap_or(0.0);
        let w1 = eigen_frequency(1, crate::units::EnergyBranch::Plus, self.params.l);
        Ok(4.0 * c0 * c0 * basis.lower[0] * basis.lower[0]
            + 8.0 * c0 * c1 * basis.lower[0] * basis.lower[1] * (w1 * t).cos())
    }
}

pub fn evolve(expansion: &LandauExpansion, r: f64, t: f64) -> Result<EnvelopePair> {
    expansion.evolve(r, t)
}

pub fn two_term_density(expansion: &LandauExpansion, r: f64, t: f64) -> Result<f64> {
    expansion.two_term_density(r, t)
}
