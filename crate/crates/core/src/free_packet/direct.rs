//! Direct two-dimensional (k, theta) quadrature of the plane-wave superposition, with
//! no Bessel reduction. Slow; it exists to check the radial engine.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::profile::CoefficientProfile;
use crate::envelope::EnvelopePair;
use crate::error::{Error, Result};
use crate::numerics::quadrature::{integrate_panels, ComplexPair, DEFAULT_TOL};
use crate::units::{Valley, GRAPHENE};

/// Trapezoid points for the theta integral at a given k*r. The rule is exact up to
/// aliasing terms of order J_M(kr), negligible once M clears kr by a margin.
fn theta_points(kr: f64) -> usize {
    (1.5 * kr).ceil() as usize + 40
}

pub fn envelope_direct(profile: &CoefficientProfile, valley: Valley, x: f64, y: f64, t: f64) -> Result<EnvelopePair> {
    envelope_direct_tol(profile, valley, x, y, t, DEFAULT_TOL)
}

pub fn envelope_direct_tol(
    profile: &CoefficientProfile,
    valley: Valley,
    x: f64,
    y: f64,
    t: f64,
    tol: f64,
) -> Result<EnvelopePair> {
    if !x.is_finite() || !y.is_finite() || !t.is_finite() {
        return Err(Error::Domain("direct evaluation needs finite x, y, t".into()));
    }
    let v = GRAPHENE.v_f;
    let r = x.hypot(y);
    let phi = if r > 0.0 { y.atan2(x) } else { 0.0 };
    let s = f64::from(valley.sign());

    let integrand = |k: f64| {
        let cp = profile.c_plus(k);
        let cm = profile.c_minus(k);
        let fwd = Complex64::from_polar(1.0, -v * k * t);
        let a = cp * fwd;
        let b = cm * fwd.conj();
        let m = theta_points(k * r);
        let h = 2.0 * PI / m as f64;
        let mut plain = Complex64::new(0.0, 0.0);
        let mut twisted = Complex64::new(0.0, 0.0);
        for j in 0..m {
            let theta = h * j as f64;
            let (st, ct) = theta.sin_cos();
            let wave = Complex64::from_polar(1.0, k * (x * ct + y * st));
            plain += wave;
            twisted += wave * Complex64::from_polar(1.0, s * theta);
        }
        ComplexPair((a + b) * (k * h) * plain, (a - b) * (k * h) * twisted)
    };
    let ComplexPair(psi1, psi2) = integrate_panels(integrand, 0.0, profile.cutoff(), r + v * t.abs(), tol)?;
    Ok(EnvelopePair {
        psi1,
        psi2_radial: psi2 * Complex64::from_polar(1.0, -s * phi),
        psi1_order: 0,
        psi2_order: valley.sign(),
        valley,
        r,
        t,
    })
}
