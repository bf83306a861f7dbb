//! Bessel functions of the first kind, orders 0 and 1.
//!
//! Power series below [`SERIES_LIMIT`], Hankel asymptotic expansion (truncated at its
//! smallest term) above. Past |x| ~ 8 the alternating series loses digits to cancellation,
//! so there it is summed in double-double; both branches are then good to ~1e-15 at the
//! switch.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{Error, Result};

/// Switch point between the power series and the asymptotic expansion.
pub const SERIES_LIMIT: f64 = 20.0;
/// Below this the plain double series is already exact to a few ulps.
const PLAIN_SERIES_LIMIT: f64 = 8.0;

pub fn bessel_j0(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(j0_unchecked(x))
}

pub fn bessel_j1(x: f64) -> Result<f64> {
    check_finite(x)?;
    Ok(j1_unchecked(x))
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("bessel argument must be finite, got {x}")))
    }
}

#[inline]
pub(crate) fn j0_unchecked(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_LIMIT {
        series(ax, 0)
    } else {
        asymptotic(ax, 0)
    }
}

#[inline]
pub(crate) fn j1_unchecked(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax < SERIES_LIMIT {
        series(ax, 1)
    } else {
        asymptotic(ax, 1)
    };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// `(J0(x), J1(x))` for `x >= 0`, sharing the trigonometric work in the asymptotic branch.
#[inline]
pub(crate) fn j01_nonneg(x: f64) -> (f64, f64) {
    debug_assert!(x >= 0.0);
    if x < SERIES_LIMIT {
        (series(x, 0), series(x, 1))
    } else {
        let (p0, q0) = pq(x, 0);
        let (p1, q1) = pq(x, 1);
        // chi_nu = x - (nu/2 + 1/4) pi; chi_1 = chi_0 - pi/2
        let (s, c) = (x - FRAC_PI_4).sin_cos();
        let amp = (2.0 / (PI * x)).sqrt();
        let j0 = amp * (p0 * c - q0 * s);
        let j1 = amp * (p1 * s + q1 * c);
        (j0, j1)
    }
}

fn series(x: f64, nu: u32) -> f64 {
    if x < PLAIN_SERIES_LIMIT {
        series_plain(x, nu)
    } else {
        series_dd(x, nu)
    }
}

fn series_plain(x: f64, nu: u32) -> f64 {
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = if nu == 0 { 1.0 } else { half };
    let mut sum = term;
    let nu = f64::from(nu);
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= q / (m * (m + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) && m > 2.0 {
            break;
        }
        if m > 200.0 {
            break;
        }
    }
    sum
}

/// Unevaluated sum `hi + lo` with |lo| <= ulp(hi)/2.
#[derive(Clone, Copy)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    fn from_product(a: f64, b: f64) -> Self {
        let hi = a * b;
        Self { hi, lo: a.mul_add(b, -hi) }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Self { hi: s, lo: lo - (s - hi) }
    }

    fn add(self, o: Self) -> Self {
        let s = self.hi + o.hi;
        let bb = s - self.hi;
        let e = (self.hi - (s - bb)) + (o.hi - bb);
        Self::renorm(s, e + self.lo + o.lo)
    }

    fn mul(self, o: Self) -> Self {
        let p = Self::from_product(self.hi, o.hi);
        Self::renorm(p.hi, p.lo + self.hi * o.lo + self.lo * o.hi)
    }

    fn div_f64(self, d: f64) -> Self {
        let q = self.hi / d;
        let p = Self::from_product(q, d);
        let r = (self.hi - p.hi - p.lo + self.lo) / d;
        Self::renorm(q, r)
    }
}

fn series_dd(x: f64, nu: u32) -> f64 {
    let half = 0.5 * x;
    let q = DoubleDouble::from_product(-half, half);
    let mut term = DoubleDouble {
        hi: if nu == 0 { 1.0 } else { half },
        lo: 0.0,
    };
    let mut sum = term;
    for m in 1..200u32 {
        term = term.mul(q).div_f64(f64::from(m * (m + nu)));
        sum = sum.add(term);
        if term.hi.abs() <= 1e-33 * sum.hi.abs().max(1e-300) {
            break;
        }
    }
    sum.hi + sum.lo
}

/// Hankel's P and Q amplitude series, summed until the terms stop decreasing.
fn pq(x: f64, nu: u32) -> (f64, f64) {
    let mu = 4.0 * f64::from(nu * nu);
    let eight_x = 8.0 * x;
    let mut a = 1.0_f64;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut prev = f64::INFINITY;
    for k in 1..200u32 {
        let odd = f64::from(2 * k - 1);
        a *= (mu - odd * odd) / (f64::from(k) * eight_x);
        let mag = a.abs();
        if mag >= prev || mag < 1e-18 {
            break;
        }
        prev = mag;
        // P = a0 - a2 + a4 - ..., Q = a1 - a3 + a5 - ...
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
    }
    (p, q)
}

fn asymptotic(x: f64, nu: u32) -> f64 {
    let (p, q) = pq(x, nu);
    let chi = x - (0.5 * f64::from(nu) + 0.25) * PI;
    let (s, c) = chi.sin_cos();
    (2.0 / (PI * x)).sqrt() * (p * c - q * s)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// J_n(x) = (1/pi) \int_0^pi cos(n tau - x sin tau) d tau, by the trapezoid rule,
    /// which converges geometrically for this periodic integrand.
    fn integral_oracle(n: i32, x: f64) -> f64 {
        let m = (x.abs() as usize) + 200;
        let h = PI / m as f64;
        let f = |tau: f64| (f64::from(n) * tau - x * tau.sin()).cos();
        let mut s = 0.5 * (f(0.0) + f(PI));
        for i in 1..m {
            s += f(i as f64 * h);
        }
        s * h / PI
    }

    #[test]
    fn reference_values() {
        assert_eq!(bessel_j0(0.0).unwrap(), 1.0);
        assert_eq!(bessel_j1(0.0).unwrap(), 0.0);
        assert!((bessel_j0(1.0).unwrap() - 0.7651976865579666).abs() < 1e-15);
        assert!((bessel_j1(1.0).unwrap() - 0.44005058574493355).abs() < 1e-15);
        assert!((bessel_j1(2.0).unwrap() - 0.5767248077568734).abs() < 1e-15);
    }

    #[test]
    fn first_zero_of_j0() {
        // bisection on the oracle, independent of the implementation
        let (mut lo, mut hi) = (2.0, 3.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if integral_oracle(0, mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - 2.404825557695773).abs() < 1e-12);
        assert!(bessel_j0(2.404825557695773).unwrap().abs() < 1e-10);
    }

    #[test]
    fn negative_arguments_use_parity() {
        for &x in &[0.3, 5.0, 17.5, 250.0] {
            assert_eq!(bessel_j0(-x).unwrap(), bessel_j0(x).unwrap());
            assert_eq!(bessel_j1(-x).unwrap(), -bessel_j1(x).unwrap());
        }
    }

    #[test]
    fn non_finite_is_rejected() {
        assert!(matches!(bessel_j0(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(bessel_j1(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn branches_agree_at_switch() {
        for i in 0..=40 {
            let x = SERIES_LIMIT - 1.0 + 0.05 * f64::from(i);
            for nu in 0..2 {
                let d = (series(x, nu) - asymptotic(x, nu)).abs();
                assert!(d <= 1e-14, "nu={nu} x={x} diff={d:e}");
            }
        }
    }

    #[test]
    fn matches_integral_representation() {
        let mut x = 0.0;
        while x <= 1e4 {
            for nu in 0..2 {
                let want = integral_oracle(nu, x);
                let got = if nu == 0 { j0_unchecked(x) } else { j1_unchecked(x) };
                assert!((got - want).abs() <= 1e-12, "nu={nu} x={x} got={got} want={want}");
            }
            x = if x < 40.0 { x + 0.37 } else { x * 1.7 };
        }
    }

    #[test]
    fn series_variants_agree_where_both_are_exact() {
        for i in 0..80 {
            let x = 0.1 * f64::from(i);
            for nu in 0..2 {
                let d = (series_plain(x, nu) - series_dd(x, nu)).abs();
                assert!(d < 1e-14, "x={x} nu={nu} diff={d:e}");
            }
        }
    }

    #[test]
    fn paired_evaluation_matches_single() {
        for i in 0..200 {
            let x = 0.173 * f64::from(i);
            let (a, b) = j01_nonneg(x);
            assert!((a - j0_unchecked(x)).abs() < 1e-15);
            assert!((b - j1_unchecked(x)).abs() < 1e-15);
        }
    }
}
