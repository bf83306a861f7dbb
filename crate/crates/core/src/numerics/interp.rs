//! Local cubic (4-point Lagrange) interpolation of complex samples on an increasing grid.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    grid: Vec<f64>,
    values: Vec<Complex64>,
}

impl Tabulated {
    pub fn new(grid: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Domain(format!(
                "grid has {} points but {} values were given",
                grid.len(),
                values.len()
            )));
        }
        if grid.len() < 4 {
            return Err(Error::Domain("need at least 4 samples to interpolate".into()));
        }
        if !grid.windows(2).all(|w| w[0] < w[1]) || grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("sample grid must be finite and strictly increasing".into()));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn start(&self) -> f64 {
        self.grid[0]
    }

    pub fn end(&self) -> f64 {
        self.grid[self.grid.len() - 1]
    }

    /// Interpolated value; zero outside the sampled range.
    pub fn eval(&self, x: f64) -> Complex64 {
        let n = self.grid.len();
        if !(x >= self.grid[0] && x <= self.grid[n - 1]) {
            return Complex64::new(0.0, 0.0);
        }
        // index of the interval [g[i], g[i+1]] holding x
        let i = match self.grid.binary_search_by(|g| g.total_cmp(&x)) {
            Ok(i) => return self.values[i],
            Err(i) => i - 1,
        };
        let lo = i.saturating_sub(1).min(n - 4);
        let xs = &self.grid[lo..lo + 4];
        let ys = &self.values[lo..lo + 4];
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..4 {
            let mut basis = 1.0;
            for m in 0..4 {
                if m != j {
                    basis *= (x - xs[m]) / (xs[j] - xs[m]);
                }
            }
            acc += ys[j] * basis;
        }
        acc
    }
}
