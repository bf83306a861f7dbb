//! Symmetric-gauge Landau eigenstates with zero angular momentum in the second component.
//!
//! With u = r^2 / 2L^2, for valley K:
//!   psi2(n)    = exp(-u/2) L_n(u) / (2 sqrt(pi) L)
//!   psi1+-(n)  = +-i sqrt(n) / (2 sqrt(2 pi) L^2) * r * exp(-u/2) * L^(1)_(n-1)(u) / n * exp(-i phi)
//! Each component carries half of the unit norm. For K' the two components swap places.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::envelope::EnvelopePair;
use crate::error::{Error, Result};
use crate::numerics::laguerre::{scaled_laguerre_sequence, MAX_DEGREE};
use crate::units::{EnergyBranch, Valley, GRAPHENE};

/// L = sqrt(hbar / eB), nm.
pub fn magnetic_length(b_field: f64) -> Result<f64> {
    if !(b_field > 0.0) || !b_field.is_finite() {
        return Err(Error::Domain(format!("magnetic field must be positive, got {b_field} T")));
    }
    Ok((GRAPHENE.hbar_over_e / b_field).sqrt())
}

/// omega_+-(n) = +-sqrt(2n) v_F / L, fs^-1.
pub fn eigen_frequency(n: usize, sign: EnergyBranch, l: f64) -> f64 {
    sign.sign() * (2.0 * n as f64).sqrt() * GRAPHENE.v_f / l
}

/// T1 = 2 pi / omega_+(1) = sqrt(2) pi L / v_F, fs.
pub fn period_t1(l: f64) -> f64 {
    std::f64::consts::SQRT_2 * PI * l / GRAPHENE.v_f
}

/// Radial parts of every level 0..len at one radius, for the K ordering.
///
/// `upper[n]` is the real amplitude `s_n(r)` with psi1+(n) = i s_n exp(-i phi) and
/// psi1-(n) = -i s_n exp(-i phi); `lower[n]` is psi2(n).
#[derive(Debug, Clone, PartialEq)]
pub struct LandauBasis {
    pub r: f64,
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
}

impl LandauBasis {
    pub fn at(r: f64, l: f64, levels: usize) -> Result<Self> {
        if levels > MAX_DEGREE + 1 {
            return Err(Error::Truncation {
                captured: f64::NAN,
                target: f64::NAN,
                cap: MAX_DEGREE,
            });
        }
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("radius must be finite and >= 0, got {r}")));
        }
        let u = r * r / (2.0 * l * l);
        let mut lower = vec![0.0; levels];
        scaled_laguerre_sequence(0.0, u, &mut lower);
        let c2 = 1.0 / (2.0 * PI.sqrt() * l);
        lower.iter_mut().for_each(|v| *v *= c2);

        let mut upper = vec![0.0; levels];
        if levels > 1 {
            let mut assoc = vec![0.0; levels - 1];
            scaled_laguerre_sequence(1.0, u, &mut assoc);
            let c1 = r / (2.0 * (2.0 * PI).sqrt() * l * l);
            for n in 1..levels {
                upper[n] = c1 * assoc[n - 1] / (n as f64).sqrt();
            }
        }
        Ok(Self { r, upper, lower })
    }

    pub fn levels(&self) -> usize {
        self.lower.len()
    }
}

/// The eigenstate (n, sign) at radius r as an envelope pair at t = 0.
pub fn eigenfunction(n: usize, sign: EnergyBranch, r: f64, l: f64, valley: Valley) -> Result<EnvelopePair> {
    if n > MAX_DEGREE {
        return Err(Error::Truncation {
            captured: f64::NAN,
            target: f64::NAN,
            cap: MAX_DEGREE,
        });
    }
    let basis = LandauBasis::at(r, l, n + 1)?;
    let f = Complex64::new(0.0, sign.sign() * basis.upper[n]);
    let g = Complex64::new(basis.lower[n], 0.0);
    Ok(arrange(f, g, valley, r, 0.0))
}

/// Places the angular-momentum-carrying amplitude `f` and the symmetric amplitude `g` on
/// the sublattices of the given valley.
pub(crate) fn arrange(f: Complex64, g: Complex64, valley: Valley, r: f64, t: f64) -> EnvelopePair {
    match valley {
        Valley::K => EnvelopePair {
            psi1: f,
            psi2_radial: g,
            psi1_order: -1,
            psi2_order: 0,
            valley,
            r,
            t,
        },
        Valley::KPrime => EnvelopePair {
            psi1: g,
            psi2_radial: f,
            psi1_order: 0,
            psi2_order: -1,
            valley,
            r,
            t,
        },
    }
}
