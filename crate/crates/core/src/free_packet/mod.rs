//! Dirac-point wave packets in free graphene, built by superposing plane-wave spinor
//! eigenstates of both energy branches.

pub mod direct;
pub mod inverse;
pub mod profile;
pub mod radial;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

pub use direct::envelope_direct;
pub use inverse::coefficients_from_initial;
pub use profile::{CoefficientProfile, GaussianShape, RadialShape, ShapeRegistry, StepShape, TabulatedShape};
pub use radial::envelope_radial;

pub use crate::envelope::density;
use crate::envelope::{check_radial_grid, DensityProfile, EnvelopePair};
use crate::error::Result;
use crate::numerics::bessel::j01_nonneg;
use crate::numerics::quadrature::{trapezoid_end_corrected, DEFAULT_TOL};
use crate::units::{Valley, GRAPHENE};

/// Default width for a two-branch superposition, nm^-1.
pub const DEFAULT_DK_BOTH: f64 = 0.42;
/// Default width for a single-branch superposition, nm^-1.
pub const DEFAULT_DK_SINGLE: f64 = 0.59;

/// A normalized free packet ready for evaluation.
#[derive(Debug, Clone)]
pub struct FreePacket {
    pub profile: CoefficientProfile,
    pub valley: Valley,
    pub tol: f64,
}

impl FreePacket {
    pub fn new(profile: &CoefficientProfile, valley: Valley) -> Result<Self> {
        Ok(Self {
            profile: profile.normalize()?,
            valley,
            tol: DEFAULT_TOL,
        })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn envelope(&self, r: f64, t: f64) -> Result<EnvelopePair> {
        radial::envelope_radial_tol(&self.profile, self.valley, r, t, self.tol)
    }

    pub fn envelope_direct(&self, x: f64, y: f64, t: f64) -> Result<EnvelopePair> {
        direct::envelope_direct_tol(&self.profile, self.valley, x, y, t, self.tol)
    }
}

/// One density profile per requested time. Points are evaluated in parallel; each radial
/// integral is summed sequentially, so the output does not depend on the schedule.
pub fn density_field(
    profile: &CoefficientProfile,
    valley: Valley,
    r_grid: &[f64],
    t_list: &[f64],
) -> Result<Vec<DensityProfile>> {
    check_radial_grid(r_grid)?;
    let points: Vec<(f64, f64)> = t_list
        .iter()
        .flat_map(|&t| r_grid.iter().map(move |&r| (t, r)))
        .collect();
    let rho: Vec<f64> = points
        .par_iter()
        .map(|&(t, r)| envelope_radial(profile, valley, r, t).map(|p| p.density()))
        .collect::<Result<_>>()?;
    t_list
        .iter()
        .zip(rho.chunks(r_grid.len()))
        .map(|(&t, chunk)| DensityProfile::new(t, r_grid.to_vec(), chunk.to_vec()))
        .collect()
}

/// Probability on the A and B sublattices: (\int |Psi1|^2, \int |Psi2|^2) over the plane.
pub fn sublattice_split(profile: &CoefficientProfile, valley: Valley, t: f64, r_grid: &[f64]) -> Result<(f64, f64)> {
    check_radial_grid(r_grid)?;
    let pairs: Vec<EnvelopePair> = r_grid
        .par_iter()
        .map(|&r| envelope_radial(profile, valley, r, t))
        .collect::<Result<_>>()?;
    let two_pi = 2.0 * PI;
    let a: Vec<f64> = pairs.iter().map(|p| two_pi * p.r * p.psi1.norm_sqr()).collect();
    let b: Vec<f64> = pairs.iter().map(|p| two_pi * p.r * p.psi2_radial.norm_sqr()).collect();
    Ok((trapezoid_end_corrected(r_grid, &a), trapezoid_end_corrected(r_grid, &b)))
}

/// Probability beyond `r_max` carried by the algebraic tail that a jump of the coefficients
/// at the cutoff a produces. The k = a endpoint dominates at large r:
///   Psi1 ~ 2 pi a h J1(ar) / r,  Psi2 ~ 2 pi a g J0(ar) / r,
/// with h, g = C+ e^{-iat} +- C- e^{iat}; the radial integrals of J^2/x are done in closed
/// form. Profiles that vanish smoothly at the cutoff give (numerically) zero.
pub fn edge_tail_probability(profile: &CoefficientProfile, r_max: f64, t: f64) -> f64 {
    let a = profile.cutoff();
    let k = a * (1.0 - 1e-12);
    let fwd = Complex64::from_polar(1.0, -GRAPHENE.v_f * a * t);
    let (cp, cm) = (profile.c_plus(k) * fwd, profile.c_minus(k) * fwd.conj());
    let (h, g) = ((cp + cm).norm_sqr(), (cp - cm).norm_sqr());
    let x = a * r_max;
    let (j0, j1) = j01_nonneg(x);
    // \int_x^inf J1^2/s ds = (J0^2 + J1^2)/2 exactly; J0^2 differs by \int (J0^2 - J1^2)/s,
    // whose leading asymptotic term is cos(2x) / (pi x^2)
    let i1 = 0.5 * (j0 * j0 + j1 * j1);
    let i0 = i1 + (2.0 * x).cos() / (PI * x * x);
    8.0 * PI.powi(3) * a * a * (h * i1 + g * i0)
}

/// Probability beyond `r_max` from the k = 0 end when C+(0) != C-(0). The spinor phase
/// exp(i theta) is not smooth at k = 0, and
///   \int k g(k) J1(kr) dk ~ g(0) / r^2,  g = C+ e^{-ikt} - C- e^{ikt},
/// so Psi2 ~ 2 pi i g(0) / r^2 and the tail is 4 pi^3 |g(0)|^2 / R^2.
pub fn origin_tail_probability(profile: &CoefficientProfile, r_max: f64) -> f64 {
    let g0 = (profile.c_plus(0.0) - profile.c_minus(0.0)).norm_sqr();
    4.0 * PI.powi(3) * g0 / (r_max * r_max)
}

/// Real-space total probability at time t and how it was assembled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationCheck {
    pub total: f64,
    /// Radius the density was integrated to.
    pub r_max: f64,
    /// Part of `total` added beyond `r_max` (asymptotic tail plus extrapolation).
    pub beyond: f64,
}

/// Panel width (nm) and Gauss-Legendre order for conservation integrals.
const CONSERVATION_PANEL: f64 = 6.0;
const CONSERVATION_ORDER: usize = 16;

/// \int rho(r, t) 2 pi r dr from evaluated densities (composite Gauss-Legendre in r).
///
/// Smoothly cut-off profiles decay like Gaussians beyond r ~ t and are integrated out to
/// t + 16/dk. Profiles with a jump at the cutoff, or with C+(0) != C-(0), keep an algebraic
/// tail; those are integrated further, the closed-form leading tail is added, and the
/// remaining truncation error is removed by Richardson extrapolation between R/2 and R.
pub fn conserved_probability(profile: &CoefficientProfile, valley: Valley, t: f64) -> Result<ConservationCheck> {
    let width = 1.0 / profile.dk;
    let near = t.abs() + 16.0 * width;
    let edge = edge_tail_probability(profile, near, t) > 1e-12;
    let origin = origin_tail_probability(profile, near) > 1e-12;
    let tail = |r: f64| edge_tail_probability(profile, r, t) + origin_tail_probability(profile, r);
    // remaining truncation error after the leading tails falls off like R^-3 (edge) or R^-4
    let order = if edge { 3 } else { 4 };
    let sharp = edge || origin;
    let reach = if sharp {
        (t.abs() + 170.0 * width).max(4.0 * t.abs())
    } else {
        near
    };
    // The next tail terms oscillate like cos(2aR); putting R/2 on a multiple of pi/a puts
    // R and R/2 at the same phase, so the extrapolation sees a clean power law.
    let half = if edge {
        let quantum = PI / profile.cutoff();
        (0.5 * reach / quantum).ceil() * quantum
    } else {
        0.5 * reach
    };
    // even panel count so that R/2 is a panel boundary
    let panels = 2 * (half / CONSERVATION_PANEL).ceil() as usize;
    let r_max = 2.0 * half;
    let step = r_max / panels as f64;
    let rule = crate::numerics::quadrature::gauss_legendre(CONSERVATION_ORDER, 0.0, step)?;
    let nodes: Vec<(f64, f64)> = (0..panels)
        .flat_map(|p| {
            let r0 = p as f64 * step;
            rule.nodes.iter().zip(&rule.weights).map(move |(&x, &w)| (r0 + x, w))
        })
        .collect();
    let parts: Vec<f64> = nodes
        .par_iter()
        .map(|&(r, w)| envelope_radial(profile, valley, r, t).map(|p| w * 2.0 * PI * r * p.density()))
        .collect::<Result<_>>()?;
    let inner: f64 = parts.iter().sum();
    let full = inner + tail(r_max);
    if !sharp {
        return Ok(ConservationCheck {
            total: full,
            r_max,
            beyond: full - inner,
        });
    }
    let half = parts[..parts.len() / 2].iter().sum::<f64>() + tail(0.5 * r_max);
    let total = full + (full - half) / f64::from((1 << order) - 1);
    Ok(ConservationCheck {
        total,
        r_max,
        beyond: total - inner,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::uniform_radii;
    use crate::units::Branches;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn eq12() -> CoefficientProfile {
        CoefficientProfile::gaussian(DEFAULT_DK_BOTH, Branches::Both)
            .unwrap()
            .normalize()
            .unwrap()
    }

    #[test]
    fn initial_state_is_the_closed_form_gaussian() {
        let p = eq12();
        let dk = DEFAULT_DK_BOTH;
        let at0 = envelope_radial(&p, Valley::K, 0.0, 0.0).unwrap();
        assert!((at0.psi1 - Complex64::new(dk / (2.0 * PI).sqrt(), 0.0)).norm() < 1e-10);
        assert!(at0.psi2_radial.norm() < 1e-14);
        assert!((at0.density() - dk * dk / (2.0 * PI)).abs() < 1e-10);
        assert!((at0.density() - 0.028074932).abs() < 1e-8);

        let sigma = 1.0 / dk;
        let at_sigma = envelope_radial(&p, Valley::K, sigma, 0.0).unwrap();
        assert!((at_sigma.density() - at0.density() * (-0.5f64).exp()).abs() < 1e-10 * at0.density());

        for i in 0..40 {
            let r = 0.5 * f64::from(i);
            let got = envelope_radial(&p, Valley::K, r, 0.0).unwrap();
            let want = dk / (2.0 * PI).sqrt() * (-dk * dk * r * r / 4.0).exp();
            assert!((got.psi1.re - want).abs() < 1e-10 * at0.psi1.re);
            assert!(got.psi2_radial.norm() < 1e-12);
        }
    }

    #[test]
    fn density_of_zero_pair_is_zero() {
        let pair = EnvelopePair {
            psi1: Complex64::new(0.0, 0.0),
            psi2_radial: Complex64::new(0.0, 0.0),
            psi1_order: 0,
            psi2_order: 1,
            valley: Valley::K,
            r: 1.0,
            t: 0.0,
        };
        assert_eq!(density(&pair), 0.0);
    }

    #[test]
    fn branch_conjugation() {
        let plus = CoefficientProfile::gaussian(DEFAULT_DK_SINGLE, Branches::Plus)
            .unwrap()
            .normalize()
            .unwrap();
        let minus = CoefficientProfile::gaussian(DEFAULT_DK_SINGLE, Branches::Minus)
            .unwrap()
            .normalize()
            .unwrap();
        for &(r, t) in &[(0.0, 3.0), (4.0, 7.5), (12.0, 18.0), (25.0, 29.0)] {
            let a = envelope_radial(&plus, Valley::K, r, t).unwrap();
            let b = envelope_radial(&minus, Valley::K, r, t).unwrap();
            let scale = a.psi1.norm().max(a.psi2_radial.norm());
            assert!((b.psi1 - a.psi1.conj()).norm() <= 1e-12 * scale);
            assert!((b.psi2_radial - a.psi2_radial.conj()).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn valleys_share_moduli() {
        let p = eq12();
        for &(r, t) in &[(1.0, 2.0), (9.0, 11.0), (20.0, 5.0)] {
            let k = envelope_radial(&p, Valley::K, r, t).unwrap();
            let kp = envelope_radial(&p, Valley::KPrime, r, t).unwrap();
            assert_eq!(k.psi1, kp.psi1);
            assert_eq!(k.psi2_radial, kp.psi2_radial);
            assert_eq!(k.psi2_order, -kp.psi2_order);
        }
    }

    #[test]
    fn sublattice_split_at_start_and_later() {
        let p = eq12();
        let grid = uniform_radii(40.0, 801);
        let (a, b) = sublattice_split(&p, Valley::K, 0.0, &grid).unwrap();
        assert!((a - 1.0).abs() < 1e-6 && b.abs() < 1e-12);
        let grid = uniform_radii(60.0, 1201);
        let d: Vec<f64> = [10.0, 20.0, 30.0]
            .iter()
            .map(|&t| {
                let (a, b) = sublattice_split(&p, Valley::K, t, &grid).unwrap();
                assert!((a + b - 1.0).abs() < 1e-6, "t={t}: {a} + {b}");
                (a - 0.5).abs()
            })
            .collect();
        assert!(d[2] < d[0], "{d:?}");
    }

    #[test]
    fn density_field_is_deterministic() {
        let p = eq12();
        let grid = uniform_radii(20.0, 65);
        let a = density_field(&p, Valley::K, &grid, &[0.0, 5.0]).unwrap();
        let b = density_field(&p, Valley::K, &grid, &[0.0, 5.0]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        assert_eq!(a[1].t, 5.0);
        assert!(density_field(&p, Valley::K, &[1.0, 2.0], &[0.0]).is_err());
    }

    #[test]
    fn step_tail_matches_the_closed_form_at_t0() {
        // at t = 0 the step packet is 4 pi N a J1(ar)/r exactly, whose tail is J0^2 + J1^2
        let p = CoefficientProfile::step(0.42, Branches::Both).unwrap().normalize().unwrap();
        for r in [100.0, 250.0, 700.0] {
            let x = 0.42 * r;
            let (j0, j1) = crate::numerics::bessel::j01_nonneg(x);
            let want = j0 * j0 + j1 * j1;
            assert!((edge_tail_probability(&p, r, 0.0) - want).abs() < 1e-12);
        }
        assert!(edge_tail_probability(&eq12(), 40.0, 10.0) < 1e-30);
    }

    #[test]
    fn conservation_for_every_family() {
        let profiles = [
            eq12(),
            CoefficientProfile::gaussian(DEFAULT_DK_SINGLE, Branches::Plus).unwrap().normalize().unwrap(),
            CoefficientProfile::step(DEFAULT_DK_BOTH, Branches::Both).unwrap().normalize().unwrap(),
        ];
        for p in &profiles {
            for t in [0.0, 12.0, 30.0] {
                let c = conserved_probability(p, Valley::K, t).unwrap();
                assert!((c.total - 1.0).abs() < 1e-6, "{} t={t}: {c:?}", p.family());
            }
        }
    }
}
