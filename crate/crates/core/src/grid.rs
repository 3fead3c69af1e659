//! Uniform phase-space grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryKind {
    Periodic,
    FreeFlow,
    InflowOutflow,
}

/// Velocity grid with `nv + 1` uniform nodes on `[v_min, v_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VelocityGrid {
    pub v_min: f64,
    pub v_max: f64,
    pub nv: usize,
    pub dv: f64,
}

impl VelocityGrid {
    pub fn new(v_min: f64, v_max: f64, nv: usize) -> Result<Self> {
        if !v_min.is_finite() || !v_max.is_finite() {
            return Err(Error::InvalidGrid("velocity bounds must be finite".into()));
        }
        if !(v_min < 0.0 && 0.0 < v_max) {
            return Err(Error::InvalidGrid(format!(
                "velocity bounds must straddle zero, got [{v_min}, {v_max}]"
            )));
        }
        if nv < 8 {
            return Err(Error::InvalidGrid(format!("N_v = {nv} < 8")));
        }
        Ok(Self {
            v_min,
            v_max,
            nv,
            dv: (v_max - v_min) / nv as f64,
        })
    }

    /// Number of nodes, `nv + 1`.
    #[inline]
    pub fn len(&self) -> usize {
        self.nv + 1
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        self.v_min + j as f64 * self.dv
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.node(j)).collect()
    }

    /// Trapezoid weights: dv inside, dv/2 at both ends.
    pub fn weights(&self) -> Vec<f64> {
        let mut w = vec![self.dv; self.len()];
        w[0] *= 0.5;
        w[self.nv] *= 0.5;
        w
    }

    pub fn max_speed(&self) -> f64 {
        self.v_min.abs().max(self.v_max.abs())
    }
}

/// Cell-centred spatial grid with `nx` cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpatialGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub dx: f64,
    pub bc: BoundaryKind,
}

impl SpatialGrid {
    pub fn new(x_min: f64, x_max: f64, nx: usize, bc: BoundaryKind) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() || !(x_min < x_max) {
            return Err(Error::InvalidGrid(format!(
                "spatial bounds [{x_min}, {x_max}] are degenerate"
            )));
        }
        if nx < 4 {
            return Err(Error::InvalidGrid(format!("N_x = {nx} < 4")));
        }
        Ok(Self {
            x_min,
            x_max,
            nx,
            dx: (x_max - x_min) / nx as f64,
            bc,
        })
    }

    #[inline]
    pub fn center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.nx).map(|i| self.center(i)).collect()
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }
}

pub fn make_grids(
    (x_min, x_max, nx): (f64, f64, usize),
    (v_min, v_max, nv): (f64, f64, usize),
    bc: BoundaryKind,
) -> Result<(SpatialGrid, VelocityGrid)> {
    Ok((
        SpatialGrid::new(x_min, x_max, nx, bc)?,
        VelocityGrid::new(v_min, v_max, nv)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn spacing_examples() {
        let (x, v) = make_grids((-1.0, 1.0, 200), (-15.0, 15.0, 60), BoundaryKind::Periodic).unwrap();
        assert_relative_eq!(x.dx, 0.01, epsilon = 1e-15);
        assert_relative_eq!(v.dv, 0.5, epsilon = 1e-15);

        let (x, v) = make_grids((0.0, 1.0, 4), (-1.0, 1.0, 8), BoundaryKind::FreeFlow).unwrap();
        assert_eq!(x.dx, 0.25);
        assert_eq!(v.dv, 0.25);

        let (x, v) = make_grids((-6.0, 6.0, 600), (-160.0, 160.0, 320), BoundaryKind::FreeFlow).unwrap();
        assert_relative_eq!(x.dx, 0.02, epsilon = 1e-15);
        assert_eq!(v.dv, 1.0);
    }

    #[test]
    fn nodes_are_reproducible() {
        let v = VelocityGrid::new(-15.0, 15.0, 60).unwrap();
        let a = v.nodes();
        let b: Vec<f64> = (0..=60).map(|j| -15.0 + j as f64 * 0.5).collect();
        assert_eq!(a, b);
        assert_eq!(v.node(60), 15.0);
        assert_eq!(v.node(30), 0.0);
    }

    #[test]
    fn rejects_degenerate_bounds() {
        assert!(VelocityGrid::new(1.0, 2.0, 10).is_err());
        assert!(VelocityGrid::new(-1.0, f64::INFINITY, 10).is_err());
        assert!(VelocityGrid::new(-1.0, 1.0, 4).is_err());
        assert!(SpatialGrid::new(1.0, 1.0, 10, BoundaryKind::Periodic).is_err());
        assert!(SpatialGrid::new(0.0, 1.0, 3, BoundaryKind::Periodic).is_err());
        assert!(SpatialGrid::new(f64::NAN, 1.0, 10, BoundaryKind::Periodic).is_err());
    }

    #[test]
    fn trapezoid_weights_sum_to_length() {
        let v = VelocityGrid::new(-3.0, 5.0, 16).unwrap();
        let s: f64 = v.weights().iter().sum();
        assert_relative_eq!(s, 8.0, epsilon = 1e-14);
    }
}
