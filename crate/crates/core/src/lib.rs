//! Time evolution of graphene wave packets centred on a Dirac point.
//!
//! Two engines share one output type ([`EnvelopePair`]): [`free_packet`] superposes
//! plane-wave spinors of both energy branches, [`landau_packet`] expands in symmetric-gauge
//! Landau eigenstates. [`analysis`] extracts rings, speeds and periods from the densities,
//! and [`scenario`] wires everything to named, runtime-selectable configurations.

pub mod analysis;
pub mod engine;
pub mod envelope;
pub mod error;
pub mod free_packet;
pub mod landau_packet;
pub mod numerics;
pub mod scenario;
pub mod units;

pub use envelope::{density, DensityProfile, EnvelopePair};
pub use error::{Error, Result};
pub use units::{Branches, EnergyBranch, PhysicalConstants, Valley, GRAPHENE};
pub use engine::{EngineRegistry, PacketEngine};
pub use scenario::{ScenarioConfig, run, list_scenarios};
