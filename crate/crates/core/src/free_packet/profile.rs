//! Radial superposition coefficients C+(k), C-(k).
//!
//! A profile is a radial shape (Gaussian, step, tabulated) scaled per branch by a real
//! amplitude and an overall normalization constant N.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::quadrature::integrate_panels;
use crate::numerics::Tabulated;
use crate::units::{Branches, EnergyBranch};

/// A radial coefficient family. Values are unnormalized.
pub trait RadialShape: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    fn value(&self, k: f64, branch: EnergyBranch) -> Complex64;

    /// Upper end of the k-range the engines integrate over.
    fn cutoff(&self) -> f64;
}

/// Truncation point of the Gaussian family, in units of its width.
pub const GAUSSIAN_CUTOFF_WIDTHS: f64 = 7.0;

/// exp(-k^2 / dk^2) on both branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianShape {
    pub dk: f64,
}

impl RadialShape for GaussianShape {
    fn name(&self) -> &str {
        "gaussian"
    }

    fn value(&self, k: f64, _branch: EnergyBranch) -> Complex64 {
        let u = k / self.dk;
        Complex64::new((-u * u).exp(), 0.0)
    }

    fn cutoff(&self) -> f64 {
        GAUSSIAN_CUTOFF_WIDTHS * self.dk
    }
}

/// 1 for k <= dk, 0 beyond.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepShape {
    pub dk: f64,
}

impl RadialShape for StepShape {
    fn name(&self) -> &str {
        "step"
    }

    fn value(&self, k: f64, _branch: EnergyBranch) -> Complex64 {
        if k <= self.dk {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    fn cutoff(&self) -> f64 {
        self.dk
    }
}

/// Independently tabulated branch coefficients, interpolated between samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedShape {
    pub plus: Tabulated,
    pub minus: Tabulated,
}

impl RadialShape for TabulatedShape {
    fn name(&self) -> &str {
        "tabulated"
    }

    fn value(&self, k: f64, branch: EnergyBranch) -> Complex64 {
        match branch {
            EnergyBranch::Plus => self.plus.eval(k),
            EnergyBranch::Minus => self.minus.eval(k),
        }
    }

    fn cutoff(&self) -> f64 {
        self.plus.end().min(self.minus.end())
    }
}

type ShapeCtor = fn(f64) -> Arc<dyn RadialShape>;

/// Named constructors for the parametric shape families.
#[derive(Clone)]
pub struct ShapeRegistry {
    ctors: BTreeMap<&'static str, ShapeCtor>,
}

impl ShapeRegistry {
    pub fn empty() -> Self {
        Self { ctors: BTreeMap::new() }
    }

    pub fn register(&mut self, name: &'static str, ctor: ShapeCtor) {
        self.ctors.insert(name, ctor);
    }

    pub fn build(&self, name: &str, dk: f64) -> Result<Arc<dyn RadialShape>> {
        if !(dk > 0.0) || !dk.is_finite() {
            return Err(Error::Domain(format!("coefficient width dk must be > 0, got {dk}")));
        }
        let ctor = self.ctors.get(name).ok_or_else(|| {
            Error::Config(format!(
                "unknown coefficient family '{name}' (known: {})",
                self.names().join(", ")
            ))
        })?;
        Ok(ctor(dk))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.ctors.keys().copied().collect()
    }
}

impl Default for ShapeRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register("gaussian", |dk| Arc::new(GaussianShape { dk }));
        reg.register("step", |dk| Arc::new(StepShape { dk }));
        reg
    }
}

#[derive(Debug, Clone)]
pub struct CoefficientProfile {
    pub shape: Arc<dyn RadialShape>,
    /// Width parameter, nm^-1. For tabulated profiles, the tabulated cutoff.
    pub dk: f64,
    pub amp_plus: f64,
    pub amp_minus: f64,
    /// Normalization constant N, nm.
    pub norm: f64,
}

impl CoefficientProfile {
    pub fn new(shape: Arc<dyn RadialShape>, dk: f64, amp_plus: f64, amp_minus: f64) -> Result<Self> {
        if !(dk > 0.0) || !dk.is_finite() {
            return Err(Error::Domain(format!("coefficient width dk must be > 0, got {dk}")));
        }
        if amp_plus == 0.0 && amp_minus == 0.0 {
            return Err(Error::DegenerateProfile("both branch amplitudes are zero".into()));
        }
        Ok(Self {
            shape,
            dk,
            amp_plus,
            amp_minus,
            norm: 1.0,
        })
    }

    /// Gaussian coefficients; both branches carry N/2 each, a single branch carries N.
    pub fn gaussian(dk: f64, branches: Branches) -> Result<Self> {
        let (p, m) = match branches {
            Branches::Both => (0.5, 0.5),
            Branches::Plus => (1.0, 0.0),
            Branches::Minus => (0.0, 1.0),
        };
        Self::new(Arc::new(GaussianShape { dk }), dk, p, m)
    }

    /// Step coefficients, N on every participating branch up to dk.
    pub fn step(dk: f64, branches: Branches) -> Result<Self> {
        let (p, m) = match branches {
            Branches::Both => (1.0, 1.0),
            Branches::Plus => (1.0, 0.0),
            Branches::Minus => (0.0, 1.0),
        };
        Self::new(Arc::new(StepShape { dk }), dk, p, m)
    }

    /// A profile from a registered family name.
    pub fn from_family(registry: &ShapeRegistry, family: &str, dk: f64, branches: Branches) -> Result<Self> {
        match family {
            "gaussian" => Self::gaussian(dk, branches),
            "step" => Self::step(dk, branches),
            _ => {
                let shape = registry.build(family, dk)?;
                let (p, m) = match branches {
                    Branches::Both => (1.0, 1.0),
                    Branches::Plus => (1.0, 0.0),
                    Branches::Minus => (0.0, 1.0),
                };
                Self::new(shape, dk, p, m)
            }
        }
    }

    pub fn tabulated(shape: TabulatedShape) -> Self {
        let dk = shape.cutoff();
        Self {
            shape: Arc::new(shape),
            dk,
            amp_plus: 1.0,
            amp_minus: 1.0,
            norm: 1.0,
        }
    }

    pub fn family(&self) -> &str {
        self.shape.name()
    }

    pub fn cutoff(&self) -> f64 {
        self.shape.cutoff()
    }

    #[inline]
    pub fn c_plus(&self, k: f64) -> Complex64 {
        if self.amp_plus == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        self.shape.value(k, EnergyBranch::Plus) * (self.norm * self.amp_plus)
    }

    #[inline]
    pub fn c_minus(&self, k: f64) -> Complex64 {
        if self.amp_minus == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        self.shape.value(k, EnergyBranch::Minus) * (self.norm * self.amp_minus)
    }

    /// Total probability of the packet this profile builds, from the k-space side:
    /// 2 (2 pi)^2 \int (|C+|^2 + |C-|^2) d^2k.
    pub fn k_space_weight(&self) -> Result<f64> {
        let integral = integrate_panels(
            |k| k * (self.c_plus(k).norm_sqr() + self.c_minus(k).norm_sqr()),
            0.0,
            self.cutoff(),
            0.0,
            1e-12,
        )?;
        Ok(2.0 * (2.0 * PI).powi(3) * integral)
    }

    /// Returns a copy whose packet carries unit total probability.
    pub fn normalize(&self) -> Result<Self> {
        let mut out = self.clone();
        out.norm = 1.0;
        let weight = out.k_space_weight()?;
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(Error::DegenerateProfile(format!(
                "profile '{}' carries no weight",
                self.family()
            )));
        }
        out.norm = 1.0 / weight.sqrt();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_both_branches_closed_form() {
        let p = CoefficientProfile::gaussian(0.42, Branches::Both).unwrap().normalize().unwrap();
        let want = 1.0 / (PI * (2.0 * PI).sqrt() * 0.42);
        assert!((p.norm - want).abs() <= 1e-10 * want, "{} vs {}", p.norm, want);
        assert!((p.norm - 0.302350647305909).abs() < 1e-12);
    }

    #[test]
    fn single_branch_and_step_are_closed_form_too() {
        // plus only: 2 (2pi)^3 N^2 dk^2/4 = 1
        let dk = 0.59;
        let p = CoefficientProfile::gaussian(dk, Branches::Plus).unwrap().normalize().unwrap();
        let want = (2.0 / ((2.0 * PI).powi(3) * dk * dk)).sqrt();
        assert!((p.norm - want).abs() <= 1e-10 * want);
        // step on both branches: 2 (2pi)^3 * 2 N^2 dk^2/2 = 1
        let dk = 0.42;
        let s = CoefficientProfile::step(dk, Branches::Both).unwrap().normalize().unwrap();
        let want = (1.0 / (2.0 * (2.0 * PI).powi(3) * dk * dk)).sqrt();
        assert!((s.norm - want).abs() <= 1e-10 * want);
    }

    #[test]
    fn degenerate_profiles_are_rejected() {
        let shape: Arc<dyn RadialShape> = Arc::new(GaussianShape { dk: 0.4 });
        assert!(matches!(
            CoefficientProfile::new(shape.clone(), 0.4, 0.0, 0.0),
            Err(Error::DegenerateProfile(_))
        ));
        assert!(CoefficientProfile::new(shape, -1.0, 1.0, 0.0).is_err());

        let zeros = Tabulated::new(vec![0.0, 1.0, 2.0, 3.0], vec![Complex64::new(0.0, 0.0); 4]).unwrap();
        let tab = CoefficientProfile::tabulated(TabulatedShape {
            plus: zeros.clone(),
            minus: zeros,
        });
        assert!(matches!(tab.normalize(), Err(Error::DegenerateProfile(_))));
    }

    #[test]
    fn registry_lookup() {
        let reg = ShapeRegistry::default();
        assert_eq!(reg.names(), vec!["gaussian", "step"]);
        assert_eq!(reg.build("step", 0.3).unwrap().cutoff(), 0.3);
        assert!((reg.build("gaussian", 0.3).unwrap().cutoff() - 2.1).abs() < 1e-15);
        assert!(matches!(reg.build("lorentzian", 0.3), Err(Error::Config(_))));
        let p = CoefficientProfile::from_family(&reg, "step", 0.42, Branches::Minus).unwrap();
        assert_eq!(p.c_plus(0.1), Complex64::new(0.0, 0.0));
        assert_eq!(p.c_minus(0.1), Complex64::new(1.0, 0.0));
        assert_eq!(p.c_minus(0.5), Complex64::new(0.0, 0.0));
    }
}
