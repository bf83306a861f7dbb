//! Named run configurations and the CSV writer behind the command-line runner.
//!
//! A configuration is a flat set of `key = value` settings. Files, builtin scenarios and
//! command-line flags all reduce to that form, so later sources simply override earlier ones.

use std::fmt::Write as _;
use std::io::Write;

use crate::analysis::detect_rings;
use crate::analysis::DEFAULT_PROMINENCE;
use crate::engine::EngineRegistry;
use crate::envelope::uniform_radii;
use crate::error::{Error, Result};
use crate::landau_packet::{DEFAULT_EPSILON, DEFAULT_SIGMA};
use crate::numerics::quadrature::DEFAULT_TOL;
use crate::units::{Branches, Valley};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Profile,
    Trace,
    Rings,
    Coeffs,
}

impl std::str::FromStr for Emit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "profile" => Ok(Emit::Profile),
            "trace" | "center-trace" => Ok(Emit::Trace),
            "rings" => Ok(Emit::Rings),
            "coeffs" | "coefficients" => Ok(Emit::Coeffs),
            other => Err(Error::Config(format!(
                "unknown output '{other}' (expected profile, trace, rings or coeffs)"
            ))),
        }
    }
}

impl std::fmt::Display for Emit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Emit::Profile => "profile",
            Emit::Trace => "trace",
            Emit::Rings => "rings",
            Emit::Coeffs => "coeffs",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// Engine name in the [`EngineRegistry`].
    pub mode: String,
    /// Coefficient family for free packets.
    pub coeff: String,
    pub dk: f64,
    pub branches: Branches,
    pub valley: Valley,
    pub sigma: f64,
    pub bfield: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub t_step: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub emit: Emit,
    /// Relative tolerance of the free-packet quadratures.
    pub tol: f64,
    /// Uncaptured weight allowed in the Landau expansion.
    pub epsilon: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            mode: "free".into(),
            coeff: "gaussian".into(),
            dk: 0.42,
            branches: Branches::Both,
            valley: Valley::K,
            sigma: DEFAULT_SIGMA,
            bfield: 1.0,
            t_start: 0.0,
            t_end: 30.0,
            t_step: 2.0,
            r_max: 40.0,
            n_r: 801,
            emit: Emit::Profile,
            tol: DEFAULT_TOL,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

fn number(key: &str, value: &str) -> Result<f64> {
    value
        .trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Config(format!("{key}: '{value}' is not a finite number")))
}

/// `start:end:step` in fs.
pub fn parse_time_range(s: &str) -> Result<(f64, f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::Config(format!("t: expected start:end:step, got '{s}'")));
    }
    Ok((number("t", parts[0])?, number("t", parts[1])?, number("t", parts[2])?))
}

impl ScenarioConfig {
    /// Sets one key. Keys are the long flag names without dashes.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "mode" => self.mode = value.to_string(),
            "coeff" => self.coeff = value.to_string(),
            "dk" => self.dk = number(key, value)?,
            "branches" => self.branches = value.parse()?,
            "valley" => self.valley = value.parse()?,
            "sigma" => self.sigma = number(key, value)?,
            "bfield" => self.bfield = number(key, value)?,
            "t" => (self.t_start, self.t_end, self.t_step) = parse_time_range(value)?,
            "rmax" => self.r_max = number(key, value)?,
            "nr" => {
                self.n_r = value
                    .parse()
                    .map_err(|_| Error::Config(format!("nr: '{value}' is not a non-negative integer")))?
            }
            "emit" => self.emit = value.parse()?,
            "tol" => self.tol = number(key, value)?,
            "epsilon" => self.epsilon = number(key, value)?,
            other => return Err(Error::Config(format!("unknown setting '{other}'"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file; `#` starts a comment, blank lines are ignored.
    /// A `scenario = name` line must come first and replaces everything with that builtin.
    pub fn apply_file(&mut self, text: &str) -> Result<()> {
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            if key.trim() == "scenario" {
                *self = builtin(value.trim())?;
            } else {
                self.set(key, value).map_err(|e| match e {
                    Error::Config(m) => Error::Config(format!("line {}: {m}", no + 1)),
                    other => other,
                })?;
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.t_step > 0.0) {
            return bad(format!("time step must be > 0, got {}", self.t_step));
        }
        if self.t_end < self.t_start {
            return bad(format!("time range end {} precedes start {}", self.t_end, self.t_start));
        }
        if self.n_r < 64 {
            return bad(format!("nr must be at least 64, got {}", self.n_r));
        }
        if !(self.r_max > 0.0) {
            return bad(format!("rmax must be > 0, got {}", self.r_max));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return bad(format!("tol must lie in (0, 1), got {}", self.tol));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad(format!("epsilon must lie in (0, 1), got {}", self.epsilon));
        }
        if self.emit == Emit::Coeffs && self.mode != "landau" {
            return bad(format!("coefficients are only defined for the landau mode, not '{}'", self.mode));
        }
        Ok(())
    }

    /// Emitted times: start, start + step, ... up to end (inclusive within rounding).
    pub fn times(&self) -> Vec<f64> {
        let count = ((self.t_end - self.t_start) / self.t_step + 1e-9).floor() as usize + 1;
        (0..count).map(|i| self.t_start + i as f64 * self.t_step).collect()
    }

    pub fn radii(&self) -> Vec<f64> {
        uniform_radii(self.r_max, self.n_r)
    }
}

struct Builtin {
    name: &'static str,
    summary: &'static str,
    settings: &'static [(&'static str, &'static str)],
}

const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "fig1a",
        summary: "single-branch gaussian packet: one ring",
        settings: &[("mode", "free"), ("coeff", "gaussian"), ("dk", "0.59"), ("branches", "plus"), ("t", "0:30:2"), ("rmax", "40"), ("nr", "801"), ("emit", "profile")],
    },
    Builtin {
        name: "fig1b",
        summary: "two-branch gaussian packet: two rings at v_F",
        settings: &[("mode", "free"), ("coeff", "gaussian"), ("dk", "0.42"), ("branches", "both"), ("t", "0:30:2"), ("rmax", "40"), ("nr", "801"), ("emit", "profile")],
    },
    Builtin {
        name: "fig2a",
        summary: "two-branch gaussian packet, early times",
        settings: &[("mode", "free"), ("coeff", "gaussian"), ("dk", "0.42"), ("branches", "both"), ("t", "3:15:1"), ("rmax", "40"), ("nr", "801"), ("emit", "profile")],
    },
    Builtin {
        name: "fig2b",
        summary: "centre density, gaussian coefficients",
        settings: &[("mode", "free"), ("coeff", "gaussian"), ("dk", "0.42"), ("branches", "both"), ("t", "0:30:0.25"), ("emit", "trace")],
    },
    Builtin {
        name: "fig2b-step",
        summary: "centre density, step coefficients C = const for k < dk",
        settings: &[("mode", "free"), ("coeff", "step"), ("dk", "0.42"), ("branches", "both"), ("t", "0:30:0.25"), ("emit", "trace")],
    },
    Builtin {
        name: "fig3a",
        summary: "centre density in a field, period T1",
        settings: &[("mode", "landau"), ("sigma", "24"), ("bfield", "1"), ("t", "0:500:1"), ("emit", "trace")],
    },
    Builtin {
        name: "fig3b",
        summary: "centre density in a weak field, long window",
        settings: &[("mode", "landau"), ("sigma", "24"), ("bfield", "0.1"), ("t", "0:5000:2"), ("emit", "trace")],
    },
    Builtin {
        name: "fig4a",
        summary: "rings shrinking into the revival",
        settings: &[("mode", "landau"), ("sigma", "24"), ("bfield", "0.1"), ("t", "71280:71380:10"), ("rmax", "300"), ("nr", "1201"), ("emit", "profile")],
    },
    Builtin {
        name: "fig4b",
        summary: "rings expanding out of the revival",
        settings: &[("mode", "landau"), ("sigma", "24"), ("bfield", "0.1"), ("t", "71380:71480:10"), ("rmax", "300"), ("nr", "1201"), ("emit", "profile")],
    },
];

pub fn builtin_names() -> Vec<&'static str> {
    BUILTINS.iter().map(|b| b.name).collect()
}

pub fn builtin(name: &str) -> Result<ScenarioConfig> {
    let b = BUILTINS.iter().find(|b| b.name == name).ok_or_else(|| {
        Error::Config(format!("unknown scenario '{name}' (available: {})", builtin_names().join(", ")))
    })?;
    let mut c = ScenarioConfig::default();
    for (k, v) in b.settings {
        c.set(k, v)?;
    }
    Ok(c)
}

/// One row per builtin scenario with its full parameter set.
pub fn list_scenarios() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<11} {:<7} {:<30} {:<16} {:<13} {:<8} description", "name", "mode", "parameters", "t_fs", "grid", "emit");
    for b in BUILTINS {
        let c = builtin(b.name).expect("builtin scenarios are valid");
        let params = if c.mode == "landau" {
            format!("sigma={} nm B={} T", c.sigma, c.bfield)
        } else {
            format!("{} dk={} nm^-1 {}", c.coeff, c.dk, c.branches)
        };
        let grid = if c.emit == Emit::Trace {
            "r=0".to_string()
        } else {
            format!("{}x{} nm", c.n_r, c.r_max)
        };
        let _ = writeln!(
            out,
            "{:<11} {:<7} {:<30} {:<16} {:<13} {:<8} {}",
            b.name,
            c.mode,
            params,
            format!("{}:{}:{}", c.t_start, c.t_end, c.t_step),
            grid,
            c.emit,
            b.summary
        );
    }
    out
}

fn sci(v: f64) -> String {
    format!("{v:.11e}")
}

/// Computes the configured output and writes it as CSV.
pub fn run(config: &ScenarioConfig, registry: &EngineRegistry, out: &mut dyn Write) -> Result<()> {
    config.validate()?;
    let engine = registry.build(config)?;
    let mut text = String::new();
    match config.emit {
        Emit::Coeffs => {
            text.push_str("n,c_plus,c_minus\n");
            for (n, p, m) in engine.coefficient_table()? {
                let _ = writeln!(text, "{n},{},{}", sci(p), sci(m));
            }
        }
        Emit::Trace => {
            let trace = engine.center_trace(&config.times())?;
            text.push_str("t_fs,rho0_nm2\n");
            for (t, rho) in trace.t.iter().zip(&trace.rho0) {
                let _ = writeln!(text, "{},{}", sci(*t), sci(*rho));
            }
        }
        Emit::Profile | Emit::Rings => {
            let profiles = engine.density_profiles(&config.radii(), &config.times())?;
            if config.emit == Emit::Profile {
                text.push_str("t_fs,r_nm,rho_nm2\n");
                for p in &profiles {
                    for (r, rho) in p.r_grid.iter().zip(&p.rho) {
                        let _ = writeln!(text, "{},{},{}", sci(p.t), sci(*r), sci(*rho));
                    }
                }
            } else {
                text.push_str("t_fs,ring_index,radius_nm,height_nm2,fwhm_nm\n");
                for p in &profiles {
                    for ring in detect_rings(p, DEFAULT_PROMINENCE)? {
                        let _ = writeln!(text, "{},{},{},{},{}", sci(p.t), ring.index, sci(ring.radius), sci(ring.height), sci(ring.fwhm));
                    }
                }
            }
        }
    }
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Config(format!("cannot write output: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_valid_and_listed() {
        assert_eq!(builtin_names().len(), 9);
        for name in builtin_names() {
            builtin(name).unwrap().validate().unwrap();
        }
        let table = list_scenarios();
        assert_eq!(table.lines().count(), 10);
        assert!(table.lines().any(|l| l.starts_with("fig2b-step") && l.contains("step")));
        assert_eq!(table, list_scenarios());
    }

    #[test]
    fn time_lists() {
        assert_eq!(builtin("fig1b").unwrap().times().len(), 16);
        assert_eq!(builtin("fig2b").unwrap().times().len(), 121);
        let t = builtin("fig4a").unwrap().times();
        assert_eq!((t.len(), t[0], t[10]), (11, 71280.0, 71380.0));
    }

    #[test]
    fn file_settings_and_overrides() {
        let mut c = ScenarioConfig::default();
        c.apply_file("scenario = fig3a\n# comment\nbfield = 0.5  # weaker\n\nt = 0:100:5\n").unwrap();
        assert_eq!((c.mode.as_str(), c.bfield, c.t_end, c.t_step), ("landau", 0.5, 100.0, 5.0));
        c.set("valley", "Kp").unwrap();
        assert_eq!(c.valley, Valley::KPrime);
        assert!(matches!(c.apply_file("bfield 2"), Err(Error::Config(_))));
        assert!(matches!(c.apply_file("colour = red"), Err(Error::Config(_))));
        assert!(matches!(c.set("dk", "abc"), Err(Error::Config(_))));
        assert!(matches!(c.set("t", "0:1"), Err(Error::Config(_))));
    }

    #[test]
    fn validation() {
        let ok = ScenarioConfig::default();
        ok.validate().unwrap();
        for (k, v) in [("t", "0:10:0"), ("t", "10:0:1"), ("nr", "63"), ("rmax", "0"), ("tol", "2"), ("emit", "coeffs")] {
            let mut c = ok.clone();
            c.set(k, v).unwrap();
            assert!(matches!(c.validate(), Err(Error::Config(_))), "{k}={v}");
        }
    }

    #[test]
    fn csv_formats() {
        let reg = EngineRegistry::default();
        let mut c = builtin("fig3a").unwrap();
        c.set("emit", "coeffs").unwrap();
        let mut buf = Vec::new();
        run(&c, &reg, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n,c_plus,c_minus"));
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row[0], "0");
        let mantissa = row[1].split('e').next().unwrap();
        assert_eq!(mantissa.replace(['.', '-'], "").len(), 12);

        c.set("emit", "trace").unwrap();
        c.set("t", "0:10:1").unwrap();
        let mut buf = Vec::new();
        run(&c, &reg, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("t_fs,rho0_nm2\n"));
        assert_eq!(text.lines().count(), 12);
    }
}
