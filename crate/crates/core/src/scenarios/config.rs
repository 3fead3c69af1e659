//! Scenario files: one TOML document per experiment.

use serde::{Deserialize, Serialize};

use super::rh::{blend, rankine_hugoniot, MachReading, RhStates};
use crate::error::{Error, Result};
use crate::grid::{BoundaryKind, SpatialGrid, VelocityGrid};
use crate::kinetic::{CflSegment, SolverConfig, Stepper};
use crate::ns::NsMethod;
use crate::params::{MixtureParams, Model, UnitSystem};
use crate::state::{BoundaryStates, SpeciesFields};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    /// Pairwise model distances over a list of ε.
    Discrepancy,
    /// Kinetic runs against the global-velocity NS system.
    NsGlobal,
    /// Kinetic runs against the multi-velocity NS system.
    NsMulti,
    /// Shock tube with companion Euler runs.
    Riemann,
    /// Long-time shock profile against R-H states and an NS reference.
    StationaryShock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixtureConfig {
    pub masses: Vec<f64>,
    pub lambda: Vec<Vec<f64>>,
    #[serde(default = "default_units")]
    pub units: UnitSystem,
}

fn default_units() -> UnitSystem {
    UnitSystem::Abstract
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x: [f64; 2],
    pub nx: usize,
    pub v: [f64; 2],
    pub nv: usize,
    pub boundary: BoundaryKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub t_end: f64,
    pub schedule: Vec<CflSegment>,
    #[serde(default)]
    pub snapshots: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum InitialData {
    /// n_s = 1/m_s, T_s = L / Σ n_k and
    /// u_s = (a_s/σ_s)[exp(−(σ_s x − 1 + s/3)²) + exp(−(σ_s x + 3 − s/10)²)]
    /// with s counted from 1.
    GaussianPulses { sigma: Vec<f64>, amplitude: Vec<f64> },
    /// Piecewise constant mass densities, common velocity and temperature.
    Riemann {
        x_jump: f64,
        rho_left: Vec<f64>,
        rho_right: Vec<f64>,
        #[serde(default)]
        u_left: f64,
        #[serde(default)]
        u_right: f64,
        t_left: f64,
        t_right: f64,
    },
    /// R-H states joined by ½(1 + tanh(a x)).
    ShockProfile {
        concentrations: Vec<f64>,
        n_inf: f64,
        t_inf: f64,
        mach_squared: f64,
        #[serde(default)]
        mach_reading: MachReading,
        slope: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunsConfig {
    pub models: Vec<Model>,
    pub eps: Vec<f64>,
    /// Fixed κ; absent means κ = ε.
    #[serde(default)]
    pub kappa: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FluidSystem {
    Global,
    Multi,
    /// Both systems (companion Euler runs).
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluidConfig {
    pub system: FluidSystem,
    pub method: NsMethod,
    /// Grid size of the fluid run; defaults to the kinetic N_x.
    #[serde(default)]
    pub nx: Option<usize>,
    /// Scale of the dissipative terms: absent means the kinetic ε, 0 gives Euler.
    #[serde(default)]
    pub eps: Option<f64>,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    #[serde(default)]
    pub art_visc: f64,
}

fn default_cfl() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub kind: ScenarioKind,
    pub mixture: MixtureConfig,
    pub grid: GridConfig,
    pub time: TimeConfig,
    pub initial: InitialData,
    pub runs: RunsConfig,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default)]
    pub fluid: Option<FluidConfig>,
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn species(&self) -> usize {
        self.mixture.masses.len()
    }

    /// Mixture parameters for one (model, ε) entry of the run matrix.
    pub fn params(&self, model: Model, eps: f64) -> Result<MixtureParams> {
        let kappa = self.runs.kappa.unwrap_or(eps);
        MixtureParams::new(self.mixture.masses.clone(), self.mixture.lambda.clone(), self.mixture.units, model, eps, kappa)
    }

    pub fn grids(&self) -> Result<(SpatialGrid, VelocityGrid)> {
        Ok((
            SpatialGrid::new(self.grid.x[0], self.grid.x[1], self.grid.nx, self.grid.boundary)?,
            VelocityGrid::new(self.grid.v[0], self.grid.v[1], self.grid.nv)?,
        ))
    }

    pub fn validate(&self) -> Result<()> {
        let l = self.species();
        let bad = |m: String| Err(Error::Config(format!("{}: {m}", self.name)));
        if self.runs.models.is_empty() || self.runs.eps.is_empty() {
            return bad("the run matrix is empty".into());
        }
        if self.runs.eps.iter().chain(self.runs.kappa.iter()).any(|e| !(*e > 0.0)) {
            return bad("eps and kappa must be positive".into());
        }
        self.params(self.runs.models[0], self.runs.eps[0])?;
        self.grids()?;
        if !(self.time.t_end > 0.0) || self.time.schedule.is_empty() {
            return bad("t_end must be positive and the CFL schedule non-empty".into());
        }
        if self.time.snapshots.iter().any(|t| !(*t >= 0.0 && *t <= self.time.t_end)) {
            return bad("snapshot times must lie in [0, t_end]".into());
        }
        match &self.initial {
            InitialData::GaussianPulses { sigma, amplitude } => {
                if sigma.len() != l || amplitude.len() != l {
                    return bad("sigma and amplitude need one entry per species".into());
                }
            }
            InitialData::Riemann { rho_left, rho_right, t_left, t_right, x_jump, .. } => {
                if rho_left.len() != l || rho_right.len() != l {
                    return bad("Riemann densities need one entry per species".into());
                }
                if rho_left.iter().chain(rho_right).any(|r| !(*r > 0.0)) || !(*t_left > 0.0 && *t_right > 0.0) {
                    return bad("Riemann states must be positive".into());
                }
                if !(*x_jump > self.grid.x[0] && *x_jump < self.grid.x[1]) {
                    return bad("the jump lies outside the domain".into());
                }
            }
            InitialData::ShockProfile { concentrations, .. } => {
                if concentrations.len() != l {
                    return bad("concentrations need one entry per species".into());
                }
                self.shock_states()?;
            }
        }
        if self.grid.boundary == BoundaryKind::InflowOutflow && !matches!(self.initial, InitialData::ShockProfile { .. }) {
            return bad("inflow-outflow boundaries need a shock profile".into());
        }
        if let Some(f) = &self.fluid {
            if f.method == NsMethod::Spectral && self.grid.boundary != BoundaryKind::Periodic {
                return bad("the spectral fluid solver needs periodic boundaries".into());
            }
            if f.nx.is_some_and(|n| n < 4) || !(f.cfl > 0.0) || !(f.art_visc >= 0.0) {
                return bad("invalid fluid settings".into());
            }
        }
        Ok(())
    }

    /// Upstream and downstream states of a shock-profile scenario.
    pub fn shock_states(&self) -> Result<RhStates> {
        match &self.initial {
            InitialData::ShockProfile { concentrations, n_inf, t_inf, mach_squared, mach_reading, .. } => {
                let n: Vec<f64> = concentrations.iter().map(|c| c * n_inf).collect();
                rankine_hugoniot(&n, &self.mixture.masses, *t_inf, mach_squared.sqrt(), *mach_reading, self.mixture.units.gas_constant())
            }
            _ => Err(Error::Config(format!("{} has no shock states", self.name))),
        }
    }

    /// Species fields of the initial data sampled at the points `x`.
    pub fn initial_fields(&self, x: &[f64]) -> Result<Vec<SpeciesFields>> {
        let l = self.species();
        let m = &self.mixture.masses;
        let nx = x.len();
        match &self.initial {
            InitialData::GaussianPulses { sigma, amplitude } => {
                let n0: Vec<f64> = m.iter().map(|m| 1.0 / m).collect();
                let t0 = l as f64 / n0.iter().sum::<f64>();
                Ok((0..l)
                    .map(|s| {
                        let sn = (s + 1) as f64;
                        let sg = sigma[s];
                        let u = x
                            .iter()
                            .map(|&x| {
                                let a = sg * x - 1.0 + sn / 3.0;
                                let b = sg * x + 3.0 - sn / 10.0;
                                amplitude[s] / sg * ((-a * a).exp() + (-b * b).exp())
                            })
                            .collect();
                        SpeciesFields { n: vec![n0[s]; nx], u, t: vec![t0; nx] }
                    })
                    .collect())
            }
            InitialData::Riemann { x_jump, rho_left, rho_right, u_left, u_right, t_left, t_right } => Ok((0..l)
                .map(|s| {
                    let left = |x: f64| x < *x_jump;
                    SpeciesFields {
                        n: x.iter().map(|&x| if left(x) { rho_left[s] } else { rho_right[s] } / m[s]).collect(),
                        u: x.iter().map(|&x| if left(x) { *u_left } else { *u_right }).collect(),
                        t: x.iter().map(|&x| if left(x) { *t_left } else { *t_right }).collect(),
                    }
                })
                .collect()),
            InitialData::ShockProfile { slope, .. } => {
                let rh = self.shock_states()?;
                Ok((0..l)
                    .map(|s| {
                        let mut f = SpeciesFields::uniform(nx, 0.0, 0.0, 0.0);
                        for (i, &xi) in x.iter().enumerate() {
                            let (n, u, t) = blend(rh.left[s], rh.right[s], *slope, xi);
                            f.n[i] = n;
                            f.u[i] = u;
                            f.t[i] = t;
                        }
                        f
                    })
                    .collect())
            }
        }
    }

    /// Fixed Maxwellian ghost data for inflow-outflow boundaries.
    pub fn boundary_states(&self, params: &MixtureParams, v: &VelocityGrid) -> Result<Option<BoundaryStates>> {
        if self.grid.boundary != BoundaryKind::InflowOutflow {
            return Ok(None);
        }
        let rh = self.shock_states()?;
        Ok(Some(BoundaryStates::from_endpoint_states(&rh.left, &rh.right, params, v)))
    }

    /// Apply command-line style overrides.
    pub fn apply_overrides(&mut self, o: &Overrides) -> Result<()> {
        if let Some(e) = &o.eps {
            self.runs.eps = e.clone();
        }
        if let Some(k) = o.kappa {
            self.runs.kappa = Some(k);
        }
        if let Some(m) = &o.models {
            self.runs.models = m.clone();
        }
        if let Some(n) = o.nx {
            self.grid.nx = n;
        }
        if let Some(n) = o.nv {
            self.grid.nv = n;
        }
        if let Some(t) = o.t_end {
            self.time.t_end = t;
            self.time.snapshots.retain(|s| *s <= t);
        }
        if let Some(st) = o.stepper {
            self.solver.stepper = st;
        }
        if let Some(f) = &mut self.fluid {
            if let Some(n) = o.fluid_nx {
                f.nx = Some(n);
            }
        }
        self.validate()
    }
}

/// Overrides of a scenario's run matrix and resolution.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Overrides {
    pub eps: Option<Vec<f64>>,
    pub kappa: Option<f64>,
    pub models: Option<Vec<Model>>,
    pub nx: Option<usize>,
    pub nv: Option<usize>,
    pub t_end: Option<f64>,
    pub fluid_nx: Option<usize>,
    pub stepper: Option<Stepper>,
}
