//! Uniform sampling grids and sampled wavefunctions.

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};

/// `count` equally spaced points from `start` to `stop`, both included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        ensure_finite("grid", "start", start)?;
        ensure_finite("grid", "stop", stop)?;
        if !(start < stop) {
            return Err(Error::domain(
                "grid",
                format!("requires start < stop, got {start}..{stop}"),
            ));
        }
        if count < 2 {
            return Err(Error::domain(
                "grid",
                format!("requires at least 2 points, got {count}"),
            ));
        }
        Ok(GridSpec { start, stop, count })
    }

    pub fn step(&self) -> f64 {
        (self.stop - self.start) / (self.count - 1) as f64
    }

    /// The grid points; the last one is `stop` exactly.
    pub fn points(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + i as f64 * h
                }
            })
            .collect()
    }
}

/// Complex samples of a state on a strictly increasing grid, with the
/// parameters that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionGrid {
    pub xs: Vec<f64>,
    pub values: Vec<Complex64>,
    pub params: Vec<(String, f64)>,
}

impl WavefunctionGrid {
    pub fn from_points(
        xs: Vec<f64>,
        values: Vec<Complex64>,
        params: Vec<(String, f64)>,
    ) -> Result<Self> {
        if xs.len() != values.len() {
            return Err(Error::domain(
                "wavefunction_grid",
                format!("{} points but {} values", xs.len(), values.len()),
            ));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::domain(
                "wavefunction_grid",
                "grid points must be strictly increasing",
            ));
        }
        Ok(WavefunctionGrid { xs, values, params })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Trapezoid approximation of `∫|ψ|² dx` over the grid.
    pub fn norm_sqr(&self) -> f64 {
        self.xs
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, v)| 0.5 * (x[1] - x[0]) * (v[0].norm_sqr() + v[1].norm_sqr()))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_hit_both_ends() {
        let g = GridSpec::new(0.0, std::f64::consts::PI, 5).unwrap();
        let p = g.points();
        assert_eq!(p.len(), 5);
        assert_eq!(p[0], 0.0);
        assert_eq!(p[4], std::f64::consts::PI);
        assert!((p[2] - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(GridSpec::new(1.0, 1.0, 3).is_err());
        assert!(GridSpec::new(0.0, 1.0, 1).is_err());
        assert!(GridSpec::new(0.0, f64::INFINITY, 3).is_err());
    }

    #[test]
    fn grid_validation() {
        let v = vec![Complex64::new(1.0, 0.0); 3];
        assert!(WavefunctionGrid::from_points(vec![0.0, 1.0, 1.0], v.clone(), vec![]).is_err());
        assert!(WavefunctionGrid::from_points(vec![0.0, 1.0], v.clone(), vec![]).is_err());
        let g = WavefunctionGrid::from_points(vec![0.0, 1.0, 2.0], v, vec![]).unwrap();
        assert!((g.norm_sqr() - 2.0).abs() < 1e-15);
    }
}
