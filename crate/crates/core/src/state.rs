//! Chu-reduced kinetic state and Maxwellian initialisation.
//!
//! A species distribution f(x, v1, v2, v3) with one-dimensional symmetry is
//! stored as the pair
//!
//! ```text
//! g1(x, v) = ∬ f dv2 dv3,      g2(x, v) = ∬ (v2² + v3²) f dv2 dv3
//! ```
//!
//! so that g2 carries the full transverse energy. For a Maxwellian with zero
//! transverse drift, g2 = (2 K T / m) g1.
//!
//! Layout is species-major, then x-major with the velocity index contiguous:
//! `g[i * nvn + j]` for cell `i` and node `j`, where `nvn = N_v + 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{BoundaryKind, SpatialGrid, VelocityGrid};
use crate::params::MixtureParams;

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// One-dimensional Gaussian M1(v; a, b) = (2πb)^(-1/2) exp(-(v-a)²/(2b)).
#[inline]
pub fn maxwellian_1d(v: f64, a: f64, b: f64) -> f64 {
    let d = v - a;
    INV_SQRT_2PI / b.sqrt() * (-d * d / (2.0 * b)).exp()
}

/// Fill one cell of a Chu pair with n · M1(v; u, K T / m) and its g2 partner.
#[allow(clippy::too_many_arguments)]
pub fn fill_maxwellian(g1: &mut [f64], g2: &mut [f64], n: f64, u: f64, t: f64, m: f64, k: f64, v: &VelocityGrid) {
    let b = k * t / m;
    for j in 0..v.len() {
        let val = n * maxwellian_1d(v.node(j), u, b);
        g1[j] = val;
        g2[j] = 2.0 * b * val;
    }
}

/// Like [`fill_maxwellian`], but corrected by a quadratic factor
/// (α + β c + γ c²), c = (v − u)/√b, so that the trapezoid moments reproduce
/// n, n u and n (u² + 3 K T / m) to round-off. Falls back to the plain
/// Maxwellian when the correction is ill-posed on the grid.
#[allow(clippy::too_many_arguments)]
pub fn fill_maxwellian_conservative(
    g1: &mut [f64],
    g2: &mut [f64],
    n: f64,
    u: f64,
    t: f64,
    m: f64,
    k: f64,
    v: &VelocityGrid,
) {
    let b = k * t / m;
    let sb = b.sqrt();
    let dv = v.dv;
    let nvn = v.len();
    let mut mu = [0.0f64; 5];
    for j in 0..nvn {
        let c = (v.node(j) - u) / sb;
        let w = if j == 0 || j == nvn - 1 { 0.5 * dv } else { dv };
        let mut p = w * maxwellian_1d(v.node(j), u, b);
        for q in mu.iter_mut() {
            *q += p;
            p *= c;
        }
    }
    let a = nalgebra::Matrix3::new(
        mu[0],
        mu[1],
        mu[2],
        mu[1],
        mu[2],
        mu[3],
        mu[2] + 2.0 * mu[0],
        mu[3] + 2.0 * mu[1],
        mu[4] + 2.0 * mu[2],
    );
    let coef = a
        .lu()
        .solve(&nalgebra::Vector3::new(1.0, 0.0, 3.0))
        .filter(|x| x.iter().all(|c| c.is_finite()) && (x[0] - 1.0).abs() < 0.25 && x[1].abs() < 0.25 && x[2].abs() < 0.25);
    for j in 0..nvn {
        let c = (v.node(j) - u) / sb;
        let phi = match &coef {
            Some(x) => x[0] + x[1] * c + x[2] * c * c,
            None => 1.0,
        };
        let val = n * maxwellian_1d(v.node(j), u, b) * phi;
        g1[j] = val;
        g2[j] = 2.0 * b * val;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChuPair {
    pub nx: usize,
    pub nvn: usize,
    pub g1: Vec<f64>,
    pub g2: Vec<f64>,
}

impl ChuPair {
    pub fn zeros(nx: usize, nvn: usize) -> Self {
        Self {
            nx,
            nvn,
            g1: vec![0.0; nx * nvn],
            g2: vec![0.0; nx * nvn],
        }
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.nvn + j
    }

    pub fn cell(&self, i: usize) -> (&[f64], &[f64]) {
        let r = i * self.nvn..(i + 1) * self.nvn;
        (&self.g1[r.clone()], &self.g2[r])
    }

    pub fn is_finite(&self) -> bool {
        self.g1.iter().chain(self.g2.iter()).all(|x| x.is_finite())
    }

    /// `self += a * other`, element-wise on both components.
    pub fn axpy(&mut self, a: f64, other: &ChuPair) {
        for (x, y) in self.g1.iter_mut().zip(&other.g1) {
            *x += a * y;
        }
        for (x, y) in self.g2.iter_mut().zip(&other.g2) {
            *x += a * y;
        }
    }
}

/// Macroscopic fields of one species over the spatial grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeciesFields {
    pub n: Vec<f64>,
    pub u: Vec<f64>,
    pub t: Vec<f64>,
}

impl SpeciesFields {
    pub fn uniform(nx: usize, n: f64, u: f64, t: f64) -> Self {
        Self {
            n: vec![n; nx],
            u: vec![u; nx],
            t: vec![t; nx],
        }
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }
}

/// Maxwellian Chu rows at the two ends of the domain, per species; used as
/// fixed ghost data by inflow-outflow boundaries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryStates {
    pub left: Vec<(Vec<f64>, Vec<f64>)>,
    pub right: Vec<(Vec<f64>, Vec<f64>)>,
}

impl BoundaryStates {
    /// Discrete Maxwellians of the endpoint states `(n, u, T)` per species.
    pub fn from_endpoint_states(
        left: &[(f64, f64, f64)],
        right: &[(f64, f64, f64)],
        params: &MixtureParams,
        v: &VelocityGrid,
    ) -> Self {
        let build = |states: &[(f64, f64, f64)]| {
            states
                .iter()
                .zip(&params.masses)
                .map(|(&(n, u, t), &m)| {
                    let mut g1 = vec![0.0; v.len()];
                    let mut g2 = vec![0.0; v.len()];
                    fill_maxwellian_conservative(&mut g1, &mut g2, n, u, t, m, params.k_gas, v);
                    (g1, g2)
                })
                .collect()
        };
        Self {
            left: build(left),
            right: build(right),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KineticState {
    pub species: Vec<ChuPair>,
}

impl KineticState {
    pub fn nx(&self) -> usize {
        self.species[0].nx
    }

    pub fn nvn(&self) -> usize {
        self.species[0].nvn
    }

    pub fn is_finite(&self) -> bool {
        self.species.iter().all(ChuPair::is_finite)
    }
}

pub fn init_maxwellian_state(
    fields: &[SpeciesFields],
    params: &MixtureParams,
    x: &SpatialGrid,
    v: &VelocityGrid,
) -> Result<KineticState> {
    if fields.len() != params.species() {
        return Err(Error::InvalidParams(format!(
            "{} field sets for {} species",
            fields.len(),
            params.species()
        )));
    }
    let nvn = v.len();
    let mut species = Vec::with_capacity(fields.len());
    for (f, &m) in fields.iter().zip(&params.masses) {
        if f.len() != x.nx || f.u.len() != x.nx || f.t.len() != x.nx {
            return Err(Error::GridMismatch("field length differs from N_x".into()));
        }
        let mut pair = ChuPair::zeros(x.nx, nvn);
        for i in 0..x.nx {
            let (n, u, t) = (f.n[i], f.u[i], f.t[i]);
            if !(n > 0.0) {
                return Err(Error::NonPositive { what: "density", value: n, cell: i });
            }
            if !(t > 0.0) {
                return Err(Error::NonPositive { what: "temperature", value: t, cell: i });
            }
            let r = i * nvn..(i + 1) * nvn;
            let (g1, g2) = (&mut pair.g1[r.clone()], &mut pair.g2[r]);
            fill_maxwellian_conservative(g1, g2, n, u, t, m, params.k_gas, v);
        }
        species.push(pair);
    }
    Ok(KineticState { species })
}

/// Ghost-cell policy for one spatial row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GhostFill {
    Periodic,
    FreeFlow,
    Fixed { left: f64, right: f64 },
}

impl GhostFill {
    pub fn from_bc(bc: BoundaryKind, fixed: Option<(f64, f64)>) -> Self {
        match (bc, fixed) {
            (BoundaryKind::Periodic, _) => GhostFill::Periodic,
            (BoundaryKind::FreeFlow, _) => GhostFill::FreeFlow,
            (BoundaryKind::InflowOutflow, Some((left, right))) => GhostFill::Fixed { left, right },
            (BoundaryKind::InflowOutflow, None) => GhostFill::Fixed { left: 0.0, right: 0.0 },
        }
    }
}

/// Write `row` padded with `ghost` cells on each side into `out`
/// (`out.len() == row.len() + 2 * ghost`). Interior values are copied verbatim.
pub fn extend_row_into(row: &[f64], ghost: usize, fill: GhostFill, out: &mut [f64]) {
    let n = row.len();
    debug_assert_eq!(out.len(), n + 2 * ghost);
    out[ghost..ghost + n].copy_from_slice(row);
    for g in 0..ghost {
        let (l, r) = match fill {
            GhostFill::Periodic => {
                let li = (n as isize - ((ghost - g) as isize)).rem_euclid(n as isize) as usize;
                (row[li], row[g % n])
            }
            GhostFill::FreeFlow => (row[0], row[n - 1]),
            GhostFill::Fixed { left, right } => (left, right),
        };
        out[g] = l;
        out[ghost + n + g] = r;
    }
}

pub fn extend_row(row: &[f64], ghost: usize, fill: GhostFill) -> Vec<f64> {
    let mut out = vec![0.0; row.len() + 2 * ghost];
    extend_row_into(row, ghost, fill, &mut out);
    out
}

/// A Chu pair padded with ghost cells in x: `nx + 2 * ghost` rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedPair {
    pub ghost: usize,
    pub pair: ChuPair,
}

/// Pad a species pair with ghost rows according to the boundary kind.
/// Inflow-outflow ghost rows hold the given endpoint Maxwellian rows.
pub fn apply_boundary(
    pair: &ChuPair,
    bc: BoundaryKind,
    ghost: usize,
    endpoints: Option<(&(Vec<f64>, Vec<f64>), &(Vec<f64>, Vec<f64>))>,
) -> Result<ExtendedPair> {
    if ghost > pair.nx {
        return Err(Error::InvalidGrid(format!("ghost width {ghost} exceeds N_x = {}", pair.nx)));
    }
    if bc == BoundaryKind::InflowOutflow && endpoints.is_none() {
        return Err(Error::InvalidParams("inflow-outflow boundary needs endpoint states".into()));
    }
    let nvn = pair.nvn;
    let mut out = ChuPair::zeros(pair.nx + 2 * ghost, nvn);
    let mut col = vec![0.0; pair.nx];
    let mut ext = vec![0.0; pair.nx + 2 * ghost];
    for j in 0..nvn {
        for (src, dst) in [(&pair.g1, 0usize), (&pair.g2, 1)] {
            for i in 0..pair.nx {
                col[i] = src[i * nvn + j];
            }
            let fixed = endpoints.map(|(l, r)| if dst == 0 { (l.0[j], r.0[j]) } else { (l.1[j], r.1[j]) });
            extend_row_into(&col, ghost, GhostFill::from_bc(bc, fixed), &mut ext);
            let target = if dst == 0 { &mut out.g1 } else { &mut out.g2 };
            for (i, &val) in ext.iter().enumerate() {
                target[i * nvn + j] = val;
            }
        }
    }
    Ok(ExtendedPair { ghost, pair: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{Model, UnitSystem};
    use approx::assert_relative_eq;

    #[test]
    fn periodic_and_free_flow_padding() {
        let row = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(extend_row(&row, 1, GhostFill::Periodic), vec![4.0, 1.0, 2.0, 3.0, 4.0, 1.0]);
        assert_eq!(
            extend_row(&row, 2, GhostFill::FreeFlow),
            vec![1.0, 1.0, 1.0, 2.0, 3.0, 4.0, 4.0, 4.0]
        );
        assert_eq!(
            extend_row(&row, 2, GhostFill::Periodic),
            vec![3.0, 4.0, 1.0, 2.0, 3.0, 4.0, 1.0, 2.0]
        );
    }

    #[test]
    fn maxwellian_peak_and_energy() {
        let v = VelocityGrid::new(-12.0, 12.0, 240).unwrap();
        assert_relative_eq!(maxwellian_1d(0.0, 0.0, 1.0), INV_SQRT_2PI, epsilon = 1e-16);
        let mut g1 = vec![0.0; v.len()];
        let mut g2 = vec![0.0; v.len()];
        // n = 1, u = 0, T = m / K
        fill_maxwellian(&mut g1, &mut g2, 1.0, 0.0, 3.0, 3.0, 1.0, &v);
        let w = v.weights();
        let e: f64 = g2.iter().zip(&w).map(|(g, w)| g * w).sum();
        assert_relative_eq!(e, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn inflow_outflow_ghosts_hold_endpoint_maxwellians() {
        let (x, v) = crate::grid::make_grids((0.0, 1.0, 8), (-6.0, 6.0, 24), BoundaryKind::InflowOutflow).unwrap();
        let params = MixtureParams::new(
            vec![1.0],
            vec![vec![1.0]],
            UnitSystem::Abstract,
            Model::Bbgsp,
            1.0,
            1.0,
        )
        .unwrap();
        let fields = vec![SpeciesFields::uniform(x.nx, 1.0, 0.0, 1.0)];
        let state = init_maxwellian_state(&fields, &params, &x, &v).unwrap();
        let bs = BoundaryStates::from_endpoint_states(&[(2.0, 0.5, 1.5)], &[(1.0, 0.2, 1.0)], &params, &v);
        let ext = apply_boundary(&state.species[0], x.bc, 2, Some((&bs.left[0], &bs.right[0]))).unwrap();
        let nvn = v.len();
        for j in 0..nvn {
            let expect_l = 2.0 * maxwellian_1d(v.node(j), 0.5, 1.5);
            let expect_r = maxwellian_1d(v.node(j), 0.2, 1.0);
            // the discrete moment correction only moves the far tails
            assert!((ext.pair.g1[j] - expect_l).abs() < 1e-4);
            assert_eq!(ext.pair.g1[nvn + j], ext.pair.g1[j]);
            assert!((ext.pair.g1[(x.nx + 3) * nvn + j] - expect_r).abs() < 1e-4);
            assert_relative_eq!(ext.pair.g2[j], 3.0 * ext.pair.g1[j], max_relative = 1e-15);
        }
        // interior untouched
        assert_eq!(&ext.pair.g1[2 * nvn..(2 + x.nx) * nvn], &state.species[0].g1[..]);
    }

    #[test]
    fn conservative_maxwellian_has_exact_discrete_moments() {
        // coarse grid: the plain trapezoid rule is off by ~1e-6 here
        let v = VelocityGrid::new(-15.0, 15.0, 40).unwrap();
        let w = v.weights();
        let (n, u, t, m) = (1.0 / 58.5, 2.3, 23.7, 58.5);
        let mut g1 = vec![0.0; v.len()];
        let mut g2 = vec![0.0; v.len()];
        fill_maxwellian_conservative(&mut g1, &mut g2, n, u, t, m, 1.0, &v);
        let mass: f64 = g1.iter().zip(&w).map(|(g, w)| g * w).sum();
        let mom: f64 = g1.iter().zip(&w).enumerate().map(|(j, (g, w))| g * w * v.node(j)).sum();
        let en: f64 = (0..v.len()).map(|j| w[j] * (v.node(j).powi(2) * g1[j] + g2[j])).sum();
        assert_relative_eq!(mass, n, max_relative = 1e-14);
        assert_relative_eq!(mom, n * u, max_relative = 1e-14);
        assert_relative_eq!(en, n * (u * u + 3.0 * t / m), max_relative = 1e-14);
        let peak = n * maxwellian_1d(u, u, t / m);
        for j in 0..v.len() {
            let plain = n * maxwellian_1d(v.node(j), u, t / m);
            assert!((g1[j] - plain).abs() <= 1e-4 * peak);
        }
    }

    #[test]
    fn init_rejects_non_positive_fields() {
        let (x, v) = crate::grid::make_grids((0.0, 1.0, 4), (-6.0, 6.0, 24), BoundaryKind::Periodic).unwrap();
        let params =
            MixtureParams::new(vec![1.0], vec![vec![1.0]], UnitSystem::Abstract, Model::Aap, 1.0, 1.0).unwrap();
        let mut f = SpeciesFields::uniform(4, 1.0, 0.0, 1.0);
        f.t[2] = 0.0;
        assert!(init_maxwellian_state(&[f], &params, &x, &v).is_err());
    }
}
