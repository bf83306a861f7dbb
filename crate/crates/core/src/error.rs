use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("quadrature did not converge on [{a}, {b}]: estimated error {estimate:.3e} > {tol:.1e} after {panels} panels")]
    Convergence {
        a: f64,
        b: f64,
        estimate: f64,
        tol: f64,
        panels: usize,
    },

    #[error("expansion truncation failed: captured weight {captured:.12} < {target:.12} at cap n = {cap}")]
    Truncation {
        captured: f64,
        target: f64,
        cap: usize,
    },

    #[error("degenerate coefficient profile: {0}")]
    DegenerateProfile(String),

    #[error("grid under-resolves a feature at r = {radius:.3} nm (fwhm {fwhm:.3} nm, grid step {step:.3} nm)")]
    Resolution { radius: f64, fwhm: f64, step: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("trace is flat: no oscillation to measure")]
    FlatTrace,

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// Numerical failures (as opposed to bad input) get their own exit code in the CLI.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Convergence { .. } | Error::Truncation { .. } | Error::Resolution { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
