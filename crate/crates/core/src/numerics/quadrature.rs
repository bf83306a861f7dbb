//! Gauss-Legendre rules and the panelled integrator for oscillatory integrands.

use std::f64::consts::{FRAC_PI_2, PI};
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub interval: (f64, f64),
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Nodes and weights of the `order`-point Gauss-Legendre rule on [-1, 1].
///
/// Newton iteration on P_order from the Tricomi initial guesses.
fn legendre_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let nf = n as f64;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // descending cosines; store ascending
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

pub fn gauss_legendre(order: usize, a: f64, b: f64) -> Result<QuadratureRule> {
    if order == 0 {
        return Err(Error::Domain("quadrature order must be >= 1".into()));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("quadrature interval must satisfy a < b, got [{a}, {b}]")));
    }
    let (x, w) = legendre_rule(order);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    Ok(QuadratureRule {
        nodes: x.iter().map(|&t| mid + half * t).collect(),
        weights: w.iter().map(|&v| half * v).collect(),
        interval: (a, b),
    })
}

/// Points per panel in the oscillatory integrator.
pub const PANEL_ORDER: usize = 16;
/// Minimum panel count in the oscillatory integrator.
pub const MIN_PANELS: usize = 64;
/// Panel doublings attempted before reporting a convergence failure.
pub const MAX_DOUBLINGS: usize = 4;
pub const DEFAULT_TOL: f64 = 1e-8;

fn reference_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(PANEL_ORDER))
}

/// Values the panelled integrator can accumulate.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// A pair of complex integrals sharing one set of integrand evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair(pub Complex64, pub Complex64);

impl Add for ComplexPair {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ComplexPair(self.0 + o.0, self.1 + o.1)
    }
}

impl Sub for ComplexPair {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ComplexPair(self.0 - o.0, self.1 - o.1)
    }
}

impl Mul<f64> for ComplexPair {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        ComplexPair(self.0 * s, self.1 * s)
    }
}

impl Integrand for ComplexPair {
    fn zero() -> Self {
        ComplexPair(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }
    fn magnitude(self) -> f64 {
        self.0.norm().max(self.1.norm())
    }
}

/// Composite rule result: integral and integral of the magnitude (the cancellation scale).
fn composite<T: Integrand, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64, panels: usize) -> (T, f64) {
    let (x, w) = reference_rule();
    let h = (b - a) / panels as f64;
    let mut total = T::zero();
    let mut scale = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        let mut acc = T::zero();
        let mut acc_abs = 0.0;
        for (&t, &wt) in x.iter().zip(w) {
            let v = f(mid + 0.5 * h * t);
            acc = acc + v * wt;
            acc_abs += wt * v.magnitude();
        }
        total = total + acc * (0.5 * h);
        scale += 0.5 * h * acc_abs;
    }
    (total, scale)
}

/// Panel count for an integrand whose phase changes at most `phase_scale` per unit length:
/// each panel covers at most a quarter turn.
pub fn panel_count(a: f64, b: f64, phase_scale: f64) -> usize {
    let by_phase = (phase_scale * (b - a) / FRAC_PI_2).ceil();
    if by_phase.is_finite() && by_phase > MIN_PANELS as f64 {
        by_phase as usize
    } else {
        MIN_PANELS
    }
}

/// Panelled Gauss-Legendre integration with a panel-doubling error check.
///
/// The error estimate is compared against `tol` times the larger of `|I|` and `\int |f|`,
/// so integrals that cancel to (near) zero are judged on the scale of their integrand.
pub fn integrate_panels<T: Integrand, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    phase_scale: f64,
    tol: f64,
) -> Result<T> {
    if !(a < b) {
        return Err(Error::Domain(format!("integration interval must satisfy a < b, got [{a}, {b}]")));
    }
    if !(phase_scale >= 0.0) || !phase_scale.is_finite() {
        return Err(Error::Domain(format!("phase scale must be finite and >= 0, got {phase_scale}")));
    }
    let mut panels = panel_count(a, b, phase_scale);
    let (mut coarse, _) = composite(&mut f, a, b, panels);
    let mut estimate = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        panels *= 2;
        let (fine, scale) = composite(&mut f, a, b, panels);
        estimate = (fine - coarse).magnitude();
        if estimate <= tol * fine.magnitude().max(scale) {
            return Ok(fine);
        }
        coarse = fine;
    }
    Err(Error::Convergence {
        a,
        b,
        estimate,
        tol,
        panels,
    })
}

pub fn integrate_oscillatory<F: FnMut(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    phase_scale: f64,
    tol: f64,
) -> Result<Complex64> {
    integrate_panels(f, a, b, phase_scale, tol)
}

/// Derivative at `xs[0]` of the polynomial interpolating the given points.
fn end_derivative(xs: &[f64], ys: &[f64]) -> f64 {
    let x0 = xs[0];
    let mut d = ys[0] * xs[1..].iter().map(|&xm| 1.0 / (x0 - xm)).sum::<f64>();
    for j in 1..xs.len() {
        let mut num = 1.0;
        let mut den = 1.0;
        for m in 0..xs.len() {
            if m != j {
                den *= xs[j] - xs[m];
                if m != 0 {
                    num *= x0 - xs[m];
                }
            }
        }
        d += ys[j] * num / den;
    }
    d
}

/// Trapezoid rule over samples, with the first Euler-Maclaurin end correction
/// `-h^2/12 (f'(b) - f'(a))`, derivatives taken from one-sided cubic interpolants.
///
/// Accurate to O(h^4) on (near-)uniform grids.
pub fn trapezoid_end_corrected(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "sample length mismatch");
    let n = x.len();
    if n < 2 {
        return 0.0;
    }
    let mut sum = 0.0;
    for i in 0..n - 1 {
        sum += 0.5 * (x[i + 1] - x[i]) * (y[i] + y[i + 1]);
    }
    if n < 3 {
        return sum;
    }
    let m = n.min(4);
    let da = end_derivative(&x[..m], &y[..m]);
    let tail_x: Vec<f64> = x[n - m..].iter().rev().copied().collect();
    let tail_y: Vec<f64> = y[n - m..].iter().rev().copied().collect();
    let db = end_derivative(&tail_x, &tail_y);
    let ha = x[1] - x[0];
    let hb = x[n - 1] - x[n - 2];
    sum - (hb * hb * db - ha * ha * da) / 12.0
}
