//! Unit system and the small enums shared by both engines.
//!
//! Lengths are in nm, times in fs, fields in T. In these units the Fermi speed is exactly 1,
//! and energies only ever appear divided by hbar (as angular frequencies in fs^-1).

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Fermi speed, nm/fs (10^6 m/s).
    pub v_f: f64,
    /// hbar / e in nm^2 T, so that sqrt(hbar_over_e / B) is the magnetic length in nm.
    pub hbar_over_e: f64,
    /// C-C bond length, nm.
    pub bond_length: f64,
    /// Lattice constant, nm.
    pub lattice_constant: f64,
    /// Length of the basic reciprocal vectors, nm^-1.
    pub reciprocal_length: f64,
}

pub const GRAPHENE: PhysicalConstants = PhysicalConstants {
    v_f: 1.0,
    hbar_over_e: 658.2119569,
    bond_length: 0.142,
    lattice_constant: 0.246,
    reciprocal_length: 29.499,
};

/// Dirac point. The sign is the `+/-` of the `exp(+/- i theta)` spinor phase (K: +1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valley {
    K,
    KPrime,
}

impl Valley {
    pub fn sign(self) -> i32 {
        match self {
            Valley::K => 1,
            Valley::KPrime => -1,
        }
    }
}

impl fmt::Display for Valley {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Valley::K => "K",
            Valley::KPrime => "Kp",
        })
    }
}

impl FromStr for Valley {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "K" | "k" => Ok(Valley::K),
            "Kp" | "kp" | "K'" | "KPrime" | "K′" => Ok(Valley::KPrime),
            other => Err(Error::Config(format!("unknown valley '{other}' (expected K or Kp)"))),
        }
    }
}

/// Sign of the eigen-energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnergyBranch {
    Plus,
    Minus,
}

impl EnergyBranch {
    pub fn sign(self) -> f64 {
        match self {
            EnergyBranch::Plus => 1.0,
            EnergyBranch::Minus => -1.0,
        }
    }
}

/// Which energy branches take part in a superposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branches {
    Plus,
    Minus,
    Both,
}

impl fmt::Display for Branches {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branches::Plus => "plus",
            Branches::Minus => "minus",
            Branches::Both => "both",
        })
    }
}

impl FromStr for Branches {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plus" => Ok(Branches::Plus),
            "minus" => Ok(Branches::Minus),
            "both" => Ok(Branches::Both),
            other => Err(Error::Config(format!("unknown branch set '{other}' (expected plus, minus or both)"))),
        }
    }
}
