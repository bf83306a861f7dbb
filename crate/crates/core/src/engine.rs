//! Evolution engines behind one interface, selectable by name at run time.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::analysis::CenterTrace;
use crate::envelope::{check_radial_grid, DensityProfile, EnvelopePair};
use crate::error::{Error, Result};
use crate::free_packet::{self, CoefficientProfile, FreePacket, ShapeRegistry};
use crate::landau_packet::{gaussian_coefficients, LandauExpansion, LandauParams};
use crate::numerics::quadrature::gauss_legendre;
use crate::scenario::ScenarioConfig;
use crate::units::Valley;

/// Total probability at one time, with how much of it came from beyond the sampled range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conservation {
    pub t: f64,
    pub total: f64,
    pub r_max: f64,
    pub beyond: f64,
}

pub trait PacketEngine: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn envelope(&self, r: f64, t: f64) -> Result<EnvelopePair>;

    fn density_profiles(&self, r_grid: &[f64], t_list: &[f64]) -> Result<Vec<DensityProfile>> {
        check_radial_grid(r_grid)?;
        let points: Vec<(f64, f64)> = t_list
            .iter()
            .flat_map(|&t| r_grid.iter().map(move |&r| (t, r)))
            .collect();
        let rho: Vec<f64> = points
            .par_iter()
            .map(|&(t, r)| self.envelope(r, t).map(|p| p.density()))
            .collect::<Result<_>>()?;
        t_list
            .iter()
            .zip(rho.chunks(r_grid.len()))
            .map(|(&t, chunk)| DensityProfile::new(t, r_grid.to_vec(), chunk.to_vec()))
            .collect()
    }

    fn center_trace(&self, t_list: &[f64]) -> Result<CenterTrace> {
        let rho0 = t_list
            .par_iter()
            .map(|&t| self.envelope(0.0, t).map(|p| p.density()))
            .collect::<Result<_>>()?;
        CenterTrace::new(t_list.to_vec(), rho0)
    }

    /// Radius beyond which the density at time t is negligible.
    fn support_radius(&self, t: f64) -> f64;

    /// \int rho 2 pi r dr at time t, by composite Gauss-Legendre out to the support radius.
    fn conservation(&self, t: f64) -> Result<Conservation> {
        let r_max = self.support_radius(t);
        let panels = (r_max / 4.0).ceil().max(8.0) as usize;
        let h = r_max / panels as f64;
        let rule = gauss_legendre(16, 0.0, h)?;
        let nodes: Vec<(f64, f64)> = (0..panels)
            .flat_map(|p| {
                let r0 = p as f64 * h;
                rule.nodes.iter().zip(&rule.weights).map(move |(&x, &w)| (r0 + x, w))
            })
            .collect();
        let total = nodes
            .par_iter()
            .map(|&(r, w)| self.envelope(r, t).map(|p| w * 2.0 * PI * r * p.density()))
            .sum::<Result<f64>>()?;
        Ok(Conservation {
            t,
            total,
            r_max,
            beyond: 0.0,
        })
    }

    /// [`PacketEngine::conservation`] at every time in the list.
    fn conservation_series(&self, t_list: &[f64]) -> Result<Vec<Conservation>> {
        t_list.iter().map(|&t| self.conservation(t)).collect()
    }

    /// (n, C+(n), C-(n)) for engines built on a discrete expansion.
    fn coefficient_table(&self) -> Result<Vec<(usize, f64, f64)>> {
        Err(Error::Unsupported(format!("engine '{}' has no discrete coefficients", self.name())))
    }
}

/// Free packet by the Hankel-reduced radial integrals.
#[derive(Debug, Clone)]
pub struct FreeRadialEngine {
    pub packet: FreePacket,
}

impl PacketEngine for FreeRadialEngine {
    fn name(&self) -> &'static str {
        "free"
    }

    fn envelope(&self, r: f64, t: f64) -> Result<EnvelopePair> {
        self.packet.envelope(r, t)
    }

    fn support_radius(&self, t: f64) -> f64 {
        t.abs() + 16.0 / self.packet.profile.dk
    }

    fn conservation(&self, t: f64) -> Result<Conservation> {
        let c = free_packet::conserved_probability(&self.packet.profile, self.packet.valley, t)?;
        Ok(Conservation {
            t,
            total: c.total,
            r_max: c.r_max,
            beyond: c.beyond,
        })
    }
}

/// Free packet by direct two-dimensional (k, theta) quadrature, sampled along phi = 0.
/// Much slower; kept as an independent cross-check of the radial engine.
#[derive(Debug, Clone)]
pub struct FreeDirectEngine {
    pub packet: FreePacket,
}

impl PacketEngine for FreeDirectEngine {
    fn name(&self) -> &'static str {
        "free-direct"
    }

    fn envelope(&self, r: f64, t: f64) -> Result<EnvelopePair> {
        self.packet.envelope_direct(r, 0.0, t)
    }

    fn support_radius(&self, t: f64) -> f64 {
        t.abs() + 16.0 / self.packet.profile.dk
    }
}

#[derive(Debug, Clone)]
pub struct LandauEngine {
    pub expansion: LandauExpansion,
}

impl PacketEngine for LandauEngine {
    fn name(&self) -> &'static str {
        "landau"
    }

    fn envelope(&self, r: f64, t: f64) -> Result<EnvelopePair> {
        self.expansion.evolve(r, t)
    }

    fn density_profiles(&self, r_grid: &[f64], t_list: &[f64]) -> Result<Vec<DensityProfile>> {
        self.expansion.density_profiles(r_grid, t_list)
    }

    fn center_trace(&self, t_list: &[f64]) -> Result<CenterTrace> {
        CenterTrace::new(t_list.to_vec(), self.expansion.trace_at(0.0, t_list)?)
    }

    fn support_radius(&self, _t: f64) -> f64 {
        self.expansion.support_radius()
    }

    fn conservation_series(&self, t_list: &[f64]) -> Result<Vec<Conservation>> {
        let r_max = self.expansion.support_radius();
        Ok(self
            .expansion
            .total_probabilities(t_list)?
            .into_iter()
            .zip(t_list)
            .map(|(total, &t)| Conservation {
                t,
                total,
                r_max,
                beyond: 0.0,
            })
            .collect())
    }

    fn coefficient_table(&self) -> Result<Vec<(usize, f64, f64)>> {
        Ok(self
            .expansion
            .c_plus
            .iter()
            .zip(&self.expansion.c_minus)
            .enumerate()
            .map(|(n, (&p, &m))| (n, p, m))
            .collect())
    }
}

pub type EngineCtor = fn(&ScenarioConfig) -> Result<Box<dyn PacketEngine>>;

/// Engines by mode name.
#[derive(Clone)]
pub struct EngineRegistry {
    ctors: BTreeMap<&'static str, EngineCtor>,
    shapes: ShapeRegistry,
}

fn free_packet_from(config: &ScenarioConfig, shapes: &ShapeRegistry) -> Result<FreePacket> {
    let profile = CoefficientProfile::from_family(shapes, &config.coeff, config.dk, config.branches)?;
    Ok(FreePacket::new(&profile, config.valley)?.with_tol(config.tol))
}

fn build_free(config: &ScenarioConfig) -> Result<Box<dyn PacketEngine>> {
    Ok(Box::new(FreeRadialEngine {
        packet: free_packet_from(config, &ShapeRegistry::default())?,
    }))
}

fn build_free_direct(config: &ScenarioConfig) -> Result<Box<dyn PacketEngine>> {
    Ok(Box::new(FreeDirectEngine {
        packet: free_packet_from(config, &ShapeRegistry::default())?,
    }))
}

fn build_landau(config: &ScenarioConfig) -> Result<Box<dyn PacketEngine>> {
    let params = LandauParams::new(config.sigma, config.bfield, config.valley)?;
    Ok(Box::new(LandauEngine {
        expansion: gaussian_coefficients(&params, config.epsilon)?,
    }))
}

impl EngineRegistry {
    pub fn empty() -> Self {
        Self {
            ctors: BTreeMap::new(),
            shapes: ShapeRegistry::default(),
        }
    }

    pub fn register(&mut self, name: &'static str, ctor: EngineCtor) {
        self.ctors.insert(name, ctor);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.ctors.keys().copied().collect()
    }

    pub fn shapes(&self) -> &ShapeRegistry {
        &self.shapes
    }

    pub fn build(&self, config: &ScenarioConfig) -> Result<Box<dyn PacketEngine>> {
        let ctor = self.ctors.get(config.mode.as_str()).ok_or_else(|| {
            Error::Config(format!(
                "unknown mode '{}' (available: {})",
                config.mode,
                self.names().join(", ")
            ))
        })?;
        if config.mode.starts_with("free") && self.shapes.build(&config.coeff, config.dk).is_err() {
            return Err(Error::Config(format!(
                "unknown coefficient family '{}' (available: {})",
                config.coeff,
                self.shapes.names().join(", ")
            )));
        }
        ctor(config)
    }
}

impl Default for EngineRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register("free", build_free);
        r.register("free-direct", build_free_direct);
        r.register("landau", build_landau);
        r
    }
}

impl fmt::Debug for EngineRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EngineRegistry").field("modes", &self.names()).finish()
    }
}

/// The valley an engine was built for.
pub fn engine_valley(engine: &dyn PacketEngine) -> Result<Valley> {
    Ok(engine.envelope(0.0, 0.0)?.valley)
}
