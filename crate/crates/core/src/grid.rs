//! Polar evaluation grids on the open unit disc.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::tolerances::R_MAX;

/// A product grid of radii and angles, enumerated radius-major so sweep
/// results are reproducible point for point.
#[derive(Debug, Clone)]
pub struct EvaluationGrid {
    radii: Vec<f64>,
    angles: Vec<f64>,
    phases: Vec<Complex64>,
}

impl EvaluationGrid {
    /// Validates radii (strictly increasing, inside (0, R_MAX]) and angles
    /// (strictly increasing, inside (-pi, pi]).
    pub fn new(radii: Vec<f64>, angles: Vec<f64>) -> Result<Self> {
        if radii.is_empty() || angles.is_empty() {
            return Err(Error::InvalidGrid { reason: "radii and angles must be nonempty".into() });
        }
        for w in radii.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::InvalidGrid { reason: "radii must be strictly increasing".into() });
            }
        }
        if radii[0] <= 0.0 || *radii.last().unwrap() > R_MAX {
            return Err(Error::InvalidGrid { reason: format!("radii must lie in (0, {R_MAX}]") });
        }
        for w in angles.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::InvalidGrid { reason: "angles must be strictly increasing".into() });
            }
        }
        if angles[0] <= -PI || *angles.last().unwrap() > PI {
            return Err(Error::InvalidGrid { reason: "angles must lie in (-pi, pi]".into() });
        }
        let phases = angles.iter().map(|&t| Complex64::cis(t)).collect();
        Ok(Self { radii, angles, phases })
    }

    /// The default certification grid: 24 radii (23 equispaced from 0.05 to
    /// 0.95, plus 0.99) by 256 equispaced angles in (-pi, pi].
    pub fn standard() -> Self {
        let mut radii: Vec<f64> = (0..23).map(|i| 0.05 + i as f64 * (0.90 / 22.0)).collect();
        radii.push(0.99);
        let angles = (0..256).map(|j| -PI + 2.0 * PI * (j + 1) as f64 / 256.0).collect();
        Self::new(radii, angles).expect("the default grid parameters are valid")
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Grid points r e^{i theta}, radius-major.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.radii
            .iter()
            .flat_map(move |&r| self.phases.iter().map(move |&ph| ph * r))
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_grid_shape() {
        let g = EvaluationGrid::standard();
        assert_eq!(g.radii().len(), 24);
        assert_eq!(g.angles().len(), 256);
        assert_eq!(g.len(), 24 * 256);
        assert!((g.radii()[0] - 0.05).abs() < 1e-15);
        assert!((g.radii()[22] - 0.95).abs() < 1e-15);
        assert!((g.radii()[23] - 0.99).abs() < 1e-15);
        assert!((g.angles()[255] - PI).abs() < 1e-15);
        assert!(g.angles()[0] > -PI);
        let first = g.points().next().unwrap();
        assert!((first.norm() - 0.05).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(EvaluationGrid::new(vec![], vec![0.0]).is_err());
        assert!(EvaluationGrid::new(vec![0.5, 0.5], vec![0.0]).is_err());
        assert!(EvaluationGrid::new(vec![0.5, 1.0], vec![0.0]).is_err());
        assert!(EvaluationGrid::new(vec![0.5], vec![-PI]).is_err());
        assert!(EvaluationGrid::new(vec![0.5], vec![0.0, 4.0]).is_err());
        assert!(EvaluationGrid::new(vec![0.5], vec![0.0]).is_ok());
    }
}
