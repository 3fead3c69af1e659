//! Time stepping: first-order splitting and a two-stage DIRK composition.

use serde::{Deserialize, Serialize};

use super::reconstruct::Reconstruction;
use super::relax::relax_implicit;
use super::transport::{transport, GhostMode, TransportConfig};
use crate::error::{Error, Result};
use crate::grid::{SpatialGrid, VelocityGrid};
use crate::moments::{conserved_totals, ConservedTotals};
use crate::params::MixtureParams;
use crate::state::{BoundaryStates, KineticState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stepper {
    /// Transport then implicit relaxation; first order.
    Be1,
    /// Stiffly accurate SDIRK2 (γ = 1 − 1/√2) along characteristics;
    /// second order in the non-stiff regime.
    Dirk2,
}

impl std::str::FromStr for Stepper {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "be1" => Ok(Stepper::Be1),
            "dirk2" => Ok(Stepper::Dirk2),
            other => Err(Error::InvalidParams(format!("unknown stepper `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub stepper: Stepper,
    pub reconstruction: Reconstruction,
    pub limiter: bool,
    /// Switch relaxation off (free streaming).
    pub collisions: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { stepper: Stepper::Dirk2, reconstruction: Reconstruction::Pp3, limiter: true, collisions: true }
    }
}

impl SolverConfig {
    fn transport_cfg(&self) -> TransportConfig {
        TransportConfig { reconstruction: self.reconstruction, limiter: self.limiter }
    }
}

/// CFL number in force from `t_start` on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CflSegment {
    pub t_start: f64,
    pub cfl: f64,
}

/// Step-size control: Δt = CFL · Δx / max|v| with a piecewise-constant CFL.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeController {
    pub schedule: Vec<CflSegment>,
    pub t_end: f64,
    pub dx: f64,
    pub max_speed: f64,
}

impl TimeController {
    pub fn new(schedule: Vec<CflSegment>, t_end: f64, x: &SpatialGrid, v: &VelocityGrid) -> Result<Self> {
        if schedule.is_empty() || schedule[0].t_start != 0.0 {
            return Err(Error::InvalidParams("CFL schedule must start at t = 0".into()));
        }
        if schedule.windows(2).any(|w| !(w[1].t_start > w[0].t_start)) || schedule.iter().any(|s| !(s.cfl > 0.0)) {
            return Err(Error::InvalidParams("CFL schedule must be increasing with positive CFL".into()));
        }
        if !(t_end > 0.0) {
            return Err(Error::InvalidParams("t_end must be positive".into()));
        }
        Ok(Self { schedule, t_end, dx: x.dx, max_speed: v.max_speed() })
    }

    pub fn constant(cfl: f64, t_end: f64, x: &SpatialGrid, v: &VelocityGrid) -> Result<Self> {
        Self::new(vec![CflSegment { t_start: 0.0, cfl }], t_end, x, v)
    }

    pub fn cfl_at(&self, t: f64) -> f64 {
        self.schedule.iter().rev().find(|s| s.t_start <= t * (1.0 + 1e-14)).map(|s| s.cfl).unwrap_or(self.schedule[0].cfl)
    }

    pub fn dt_at(&self, t: f64) -> f64 {
        self.cfl_at(t) * self.dx / self.max_speed
    }

    /// Next step from `t`, clipped so that segment switches and `stop` are hit exactly.
    pub fn next_dt(&self, t: f64, stop: f64) -> f64 {
        let mut dt = self.dt_at(t);
        let mut limit = stop.min(self.t_end);
        if let Some(s) = self.schedule.iter().find(|s| s.t_start > t * (1.0 + 1e-14) + 1e-300) {
            limit = limit.min(s.t_start);
        }
        let rem = limit - t;
        if dt >= rem * (1.0 - 1e-10) {
            dt = rem;
        }
        dt
    }
}

#[derive(Debug, Clone)]
pub struct KineticSolver {
    pub params: MixtureParams,
    pub x: SpatialGrid,
    pub v: VelocityGrid,
    pub config: SolverConfig,
    pub boundary: Option<BoundaryStates>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Snapshot {
    pub t: f64,
    pub totals: ConservedTotals,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub state: KineticState,
    pub t: f64,
    pub steps: usize,
    pub ledger: Vec<Snapshot>,
    pub snapshots: Vec<(f64, KineticState)>,
}

impl KineticSolver {
    pub fn new(params: MixtureParams, x: SpatialGrid, v: VelocityGrid, config: SolverConfig, boundary: Option<BoundaryStates>) -> Result<Self> {
        params.validate()?;
        if x.bc == crate::grid::BoundaryKind::InflowOutflow && boundary.is_none() {
            return Err(Error::InvalidParams("inflow-outflow boundary needs endpoint states".into()));
        }
        Ok(Self { params, x, v, config, boundary })
    }

    fn transport(&self, state: &KineticState, dt: f64, mode: GhostMode) -> KineticState {
        transport(state, dt, &self.x, &self.v, self.config.transport_cfg(), self.boundary.as_ref(), mode)
    }

    fn relax(&self, state: &KineticState, dt: f64) -> Result<KineticState> {
        if self.config.collisions {
            relax_implicit(state, dt, &self.params, &self.v)
        } else {
            Ok(state.clone())
        }
    }

    /// One step of size `dt`.
    pub fn step(&self, state: &KineticState, dt: f64) -> Result<KineticState> {
        match self.config.stepper {
            Stepper::Be1 => {
                let t = self.transport(state, dt, GhostMode::State);
                self.relax(&t, dt)
            }
            Stepper::Dirk2 => {
                let g = 1.0 - std::f64::consts::FRAC_1_SQRT_2;
                let pre1 = self.transport(state, g * dt, GhostMode::State);
                let f1 = self.relax(&pre1, g * dt)?;
                // K1 = (F1 − pre1) / (γ Δt), carried to t + Δt
                let mut k1 = f1;
                for (a, b) in k1.species.iter_mut().zip(&pre1.species) {
                    a.axpy(-1.0, b);
                    let s = 1.0 / (g * dt);
                    a.g1.iter_mut().for_each(|x| *x *= s);
                    a.g2.iter_mut().for_each(|x| *x *= s);
                }
                let k1t = self.transport(&k1, (1.0 - g) * dt, GhostMode::Increment);
                let mut pre2 = self.transport(state, dt, GhostMode::State);
                for (a, b) in pre2.species.iter_mut().zip(&k1t.species) {
                    a.axpy((1.0 - g) * dt, b);
                }
                self.relax(&pre2, g * dt)
            }
        }
    }

    pub fn totals(&self, state: &KineticState) -> ConservedTotals {
        conserved_totals(state, &self.params, &self.x, &self.v)
    }

    /// Advance to `controller.t_end`, keeping copies of the state at the
    /// requested `snapshot_times` and a conservation ledger at each of them.
    pub fn advance(&self, state: &KineticState, controller: &TimeController, snapshot_times: &[f64]) -> Result<RunOutput> {
        let mut cur = state.clone();
        let mut t = 0.0;
        let mut steps = 0;
        let mut ledger = vec![Snapshot { t, totals: self.totals(&cur) }];
        let mut snapshots = Vec::new();
        let mut stops: Vec<f64> = snapshot_times.iter().copied().filter(|s| *s > 0.0 && *s < controller.t_end).collect();
        stops.push(controller.t_end);
        stops.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for &stop in &stops {
            while t < stop * (1.0 - 1e-13) {
                let dt = controller.next_dt(t, stop);
                cur = self.step(&cur, dt).map_err(|e| match e {
                    Error::NonPositive { what, value, cell } => Error::NonFinite {
                        field: format!("{what} = {value:e}"),
                        cell,
                        t: t + dt,
                    },
                    other => other,
                })?;
                t += dt;
                steps += 1;
                check_finite(&cur, t)?;
            }
            t = stop;
            ledger.push(Snapshot { t, totals: self.totals(&cur) });
            if snapshot_times.iter().any(|s| (s - stop).abs() <= 1e-12 * stop.max(1.0)) {
                snapshots.push((t, cur.clone()));
            }
        }
        Ok(RunOutput { state: cur, t, steps, ledger, snapshots })
    }
}

fn check_finite(state: &KineticState, t: f64) -> Result<()> {
    for (s, p) in state.species.iter().enumerate() {
        if let Some(idx) = p.g1.iter().chain(p.g2.iter()).position(|v| !v.is_finite()) {
            let idx = idx % (p.nx * p.nvn);
            return Err(Error::NonFinite { field: format!("g of species {s}"), cell: idx / p.nvn, t });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grids, BoundaryKind};

    #[test]
    fn schedule_hits_switch_times_exactly() {
        let (x, v) = make_grids((-1.0, 1.0, 200), (-15.0, 15.0, 60), BoundaryKind::Periodic).unwrap();
        let c = TimeController::new(
            vec![CflSegment { t_start: 0.0, cfl: 0.2 }, CflSegment { t_start: 0.004, cfl: 2.0 }],
            0.04,
            &x,
            &v,
        )
        .unwrap();
        assert!((c.dt_at(0.0) - 0.2 * 0.01 / 15.0).abs() < 1e-18);
        assert!((c.dt_at(0.01) - 2.0 * 0.01 / 15.0).abs() < 1e-18);
        let mut t = 0.0;
        let mut hit = false;
        while t < 0.04 * (1.0 - 1e-13) {
            let dt = c.next_dt(t, 0.04);
            t += dt;
            hit |= (t - 0.004).abs() < 1e-15;
        }
        assert!(hit);
        assert!((t - 0.04).abs() < 1e-15);
        assert!(TimeController::new(vec![CflSegment { t_start: 0.1, cfl: 1.0 }], 1.0, &x, &v).is_err());
    }
}
