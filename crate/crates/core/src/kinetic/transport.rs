//! Conservative semi-Lagrangian transport in flux form.
//!
//! For a shift s = v Δt = (m + θ) Δx the new average of cell i is the
//! average of the reconstruction over the cell traced back by s. Writing it
//! as a difference of interface fluxes,
//!
//! ```text
//! F_{i+1/2} = Σ_{q<m} ḡ_{i−q} + ∫_{1/2−θ}^{1/2} p_{i−m}(ξ) dξ       (v > 0)
//! ```
//!
//! makes the update exactly conservative for any CFL number.

use rayon::prelude::*;

use super::reconstruct::{reconstruct_row, Poly, Reconstruction};
use crate::grid::{BoundaryKind, SpatialGrid, VelocityGrid};
use crate::state::{extend_row_into, BoundaryStates, ChuPair, GhostFill, KineticState};

/// What the ghost cells hold during a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhostMode {
    /// Boundary data of the distribution itself.
    State,
    /// Data for increments (stage derivatives): fixed boundary values
    /// become zero, other boundary kinds are unchanged.
    Increment,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportConfig {
    pub reconstruction: Reconstruction,
    pub limiter: bool,
}

impl Default for TransportConfig {
    fn default() -> Self {
        Self { reconstruction: Reconstruction::Pp3, limiter: true }
    }
}

/// Advect one row of cell averages by `shift` cells (signed), writing the
/// result into `out`.
pub fn transport_row(row: &[f64], shift: f64, fill: GhostFill, cfg: TransportConfig, out: &mut [f64]) {
    let nx = row.len();
    if shift == 0.0 {
        out.copy_from_slice(row);
        return;
    }
    let a = shift.abs();
    let m = a.floor() as usize;
    let theta = a - m as f64;
    let ghost = m + 3;
    let mut ext = vec![0.0; nx + 2 * ghost];
    extend_row_into(row, ghost, fill, &mut ext);
    let scale = ext.iter().fold(0.0f64, |s, v| s.max(v.abs()));
    let h = 1.0 / nx as f64;
    let eps_w = (h * scale) * (h * scale) + 1e-300;
    let mut polys = vec![Poly::default(); ext.len()];
    reconstruct_row(&ext, cfg.reconstruction, eps_w, cfg.limiter, &mut polys);

    // flux[i] is the flux through the left interface of interior cell i,
    // i = 0..=nx, counted positive to the right.
    let mut flux = vec![0.0; nx + 1];
    if shift > 0.0 {
        for (i, f) in flux.iter_mut().enumerate() {
            // interface between ext cells (ghost + i − 1) and (ghost + i)
            let up = ghost + i - 1;
            let mut acc = 0.0;
            for q in 0..m {
                acc += ext[up - q];
            }
            if theta > 0.0 {
                acc += polys[up - m].right_integral(theta);
            }
            *f = acc;
        }
    } else {
        for (i, f) in flux.iter_mut().enumerate() {
            let down = ghost + i;
            let mut acc = 0.0;
            for q in 0..m {
                acc += ext[down + q];
            }
            if theta > 0.0 {
                acc += polys[down + m].left_integral(theta);
            }
            *f = -acc;
        }
    }
    for i in 0..nx {
        out[i] = row[i] - (flux[i + 1] - flux[i]);
    }
}

fn fill_for(bc: BoundaryKind, mode: GhostMode, fixed: Option<(f64, f64)>) -> GhostFill {
    match (bc, mode) {
        (BoundaryKind::InflowOutflow, GhostMode::Increment) => GhostFill::Fixed { left: 0.0, right: 0.0 },
        _ => GhostFill::from_bc(bc, fixed),
    }
}

/// Transport one species pair by `dt`.
pub fn transport_pair(
    pair: &ChuPair,
    dt: f64,
    x: &SpatialGrid,
    v: &VelocityGrid,
    cfg: TransportConfig,
    endpoints: Option<(&(Vec<f64>, Vec<f64>), &(Vec<f64>, Vec<f64>))>,
    mode: GhostMode,
) -> ChuPair {
    let nx = pair.nx;
    let nvn = pair.nvn;
    let cols: Vec<(Vec<f64>, Vec<f64>)> = (0..nvn)
        .into_par_iter()
        .map(|j| {
            let shift = v.node(j) * dt / x.dx;
            let mut col = vec![0.0; nx];
            let mut o1 = vec![0.0; nx];
            let mut o2 = vec![0.0; nx];
            for i in 0..nx {
                col[i] = pair.g1[i * nvn + j];
            }
            let f1 = fill_for(x.bc, mode, endpoints.map(|(l, r)| (l.0[j], r.0[j])));
            transport_row(&col, shift, f1, cfg, &mut o1);
            for i in 0..nx {
                col[i] = pair.g2[i * nvn + j];
            }
            let f2 = fill_for(x.bc, mode, endpoints.map(|(l, r)| (l.1[j], r.1[j])));
            transport_row(&col, shift, f2, cfg, &mut o2);
            (o1, o2)
        })
        .collect();
    let mut out = ChuPair::zeros(nx, nvn);
    for (j, (c1, c2)) in cols.into_iter().enumerate() {
        for i in 0..nx {
            out.g1[i * nvn + j] = c1[i];
            out.g2[i * nvn + j] = c2[i];
        }
    }
    out
}

/// Transport every species by `dt`.
pub fn transport(
    state: &KineticState,
    dt: f64,
    x: &SpatialGrid,
    v: &VelocityGrid,
    cfg: TransportConfig,
    boundary: Option<&BoundaryStates>,
    mode: GhostMode,
) -> KineticState {
    let species = state
        .species
        .iter()
        .enumerate()
        .map(|(s, p)| {
            let ends = boundary.map(|b| (&b.left[s], &b.right[s]));
            transport_pair(p, dt, x, v, cfg, ends, mode)
        })
        .collect();
    KineticState { species }
}
