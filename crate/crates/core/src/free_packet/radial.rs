//! Angularly reduced evaluation: after the theta integral, Psi1 and Psi2 are Hankel
//! transforms of orders 0 and 1,
//!
//!   Psi1(r, t)        = 2 pi   \int k [C+ e^{-ikt} + C- e^{+ikt}] J0(kr) dk
//!   Psi2_radial(r, t) = 2 pi i \int k [C+ e^{-ikt} - C- e^{+ikt}] J1(kr) dk
//!
//! with v_F = 1. The azimuthal factor exp(+/- i phi) of Psi2 follows the valley sign.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::profile::CoefficientProfile;
use crate::envelope::EnvelopePair;
use crate::error::{Error, Result};
use crate::numerics::bessel::j01_nonneg;
use crate::numerics::quadrature::{integrate_panels, ComplexPair, DEFAULT_TOL};
use crate::units::{Valley, GRAPHENE};

pub fn envelope_radial(profile: &CoefficientProfile, valley: Valley, r: f64, t: f64) -> Result<EnvelopePair> {
    envelope_radial_tol(profile, valley, r, t, DEFAULT_TOL)
}

pub fn envelope_radial_tol(
    profile: &CoefficientProfile,
    valley: Valley,
    r: f64,
    t: f64,
    tol: f64,
) -> Result<EnvelopePair> {
    if !(r >= 0.0) || !r.is_finite() || !t.is_finite() {
        return Err(Error::Domain(format!("need finite r >= 0 and finite t, got r = {r}, t = {t}")));
    }
    let v = GRAPHENE.v_f;
    let integrand = |k: f64| {
        let cp = profile.c_plus(k);
        let cm = profile.c_minus(k);
        let fwd = Complex64::from_polar(1.0, -v * k * t);
        let a = cp * fwd;
        let b = cm * fwd.conj();
        let (j0, j1) = j01_nonneg(k * r);
        ComplexPair((a + b) * (k * j0), (a - b) * (k * j1))
    };
    let ComplexPair(i0, i1) = integrate_panels(integrand, 0.0, profile.cutoff(), r + v * t.abs(), tol)?;
    Ok(EnvelopePair {
        psi1: i0 * (2.0 * PI),
        psi2_radial: i1 * Complex64::new(0.0, 2.0 * PI),
        psi1_order: 0,
        psi2_order: valley.sign(),
        valley,
        r,
        t,
    })
}
