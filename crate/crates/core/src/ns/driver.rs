//! Time loop shared by both fluid systems.

use serde::{Deserialize, Serialize};

use super::fv::{maccormack_step, FvBoundary};
use super::rk4::{rk4_step, Fields};
use super::spectral::SpectralDiff;
use super::ConservationSystem;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NsMethod {
    /// Fourier derivatives with classical RK4 (periodic only).
    Spectral,
    MacCormack,
}

impl std::str::FromStr for NsMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "spectral" => Ok(NsMethod::Spectral),
            "maccormack" => Ok(NsMethod::MacCormack),
            other => Err(Error::Config(format!("unknown fluid method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NsRunConfig {
    pub method: NsMethod,
    pub t_end: f64,
    /// Advective limit Δt ≤ cfl_adv Δx / max speed.
    pub cfl_adv: f64,
    /// Diffusive limit Δt ≤ diff_factor Δx² / D.
    pub diff_factor: f64,
    pub art_visc: f64,
    pub snapshot_times: Vec<f64>,
}

impl NsRunConfig {
    pub fn new(method: NsMethod, t_end: f64) -> Self {
        Self { method, t_end, cfl_adv: 0.5, diff_factor: 0.25, art_visc: 0.0, snapshot_times: Vec::new() }
    }
}

#[derive(Debug, Clone)]
pub struct NsRun {
    pub fields: Fields,
    pub t: f64,
    pub steps: usize,
    pub snapshots: Vec<(f64, Fields)>,
    /// (t, Σ_i U_v,i Δx for every variable) at t = 0, each snapshot and the end.
    pub totals: Vec<(f64, Vec<f64>)>,
}

fn totals(u: &Fields, dx: f64) -> Vec<f64> {
    u.iter().map(|row| row.iter().sum::<f64>() * dx).collect()
}

pub fn stable_dt<S: ConservationSystem + ?Sized>(sys: &S, u: &Fields, dx: f64, cfg: &NsRunConfig) -> Result<f64> {
    let a = sys.max_speed(u)?;
    let d = sys.max_diffusivity(u)?;
    let mut dt = f64::INFINITY;
    if a > 0.0 {
        dt = dt.min(cfg.cfl_adv * dx / a);
    }
    if d > 0.0 {
        dt = dt.min(cfg.diff_factor * dx * dx / d);
    }
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::NonFinite { field: "time step".into(), cell: 0, t: f64::NAN });
    }
    Ok(dt)
}

/// One step of the chosen method.
pub fn step_system<S: ConservationSystem + ?Sized>(
    sys: &S,
    u: &Fields,
    dt: f64,
    dx: f64,
    bc: &FvBoundary,
    method: NsMethod,
    spectral: Option<&SpectralDiff>,
    art_visc: f64,
) -> Result<Fields> {
    match method {
        NsMethod::MacCormack => maccormack_step(sys, u, dt, dx, bc, art_visc),
        NsMethod::Spectral => {
            let diff = spectral.ok_or_else(|| Error::Config("spectral step needs a differentiator".into()))?;
            let grad = |a: &[f64]| diff.d1(a);
            let mut out = rk4_step(u, dt, |w| {
                let f = sys.flux(w, &grad)?;
                let mut r: Fields = f.iter().map(|row| diff.d1(row).into_iter().map(|v| -v).collect()).collect();
                if let Some(s) = sys.source(w)? {
                    for (row, srow) in r.iter_mut().zip(&s) {
                        row.iter_mut().zip(srow).for_each(|(a, b)| *a += b);
                    }
                }
                Ok(r)
            })?;
            sys.implicit_source(&mut out, dt)?;
            Ok(out)
        }
    }
}

pub fn run_system<S: ConservationSystem + ?Sized>(
    sys: &S,
    u0: Fields,
    dx: f64,
    length: f64,
    bc: &FvBoundary,
    cfg: &NsRunConfig,
) -> Result<NsRun> {
    if u0.len() != sys.nvars() {
        return Err(Error::GridMismatch(format!("expected {} variables, got {}", sys.nvars(), u0.len())));
    }
    let spectral = match cfg.method {
        NsMethod::Spectral => {
            if *bc != FvBoundary::Periodic {
                return Err(Error::Config("the spectral method needs periodic boundaries".into()));
            }
            Some(SpectralDiff::new(u0[0].len(), length)?)
        }
        NsMethod::MacCormack => None,
    };
    let mut stops: Vec<f64> = cfg.snapshot_times.iter().copied().filter(|t| *t > 0.0 && *t < cfg.t_end).collect();
    stops.sort_by(f64::total_cmp);
    stops.push(cfg.t_end);

    let mut u = u0;
    let mut t = 0.0;
    let mut steps = 0;
    let mut run_totals = vec![(0.0, totals(&u, dx))];
    let mut snapshots = Vec::new();
    if cfg.snapshot_times.contains(&0.0) {
        snapshots.push((0.0, u.clone()));
    }
    for stop in stops {
        while t < stop {
            let mut dt = stable_dt(sys, &u, dx, cfg)?;
            if t + dt >= stop - 1e-14 * stop.max(1.0) {
                dt = stop - t;
            }
            u = step_system(sys, &u, dt, dx, bc, cfg.method, spectral.as_ref(), cfg.art_visc).map_err(|e| match e {
                Error::NonFinite { field, cell, .. } => Error::NonFinite { field, cell, t },
                other => other,
            })?;
            t = if dt == stop - t { stop } else { t + dt };
            steps += 1;
        }
        run_totals.push((t, totals(&u, dx)));
        if stop < cfg.t_end || cfg.snapshot_times.contains(&cfg.t_end) {
            snapshots.push((t, u.clone()));
        }
    }
    Ok(NsRun { fields: u, t, steps, snapshots, totals: run_totals })
}
