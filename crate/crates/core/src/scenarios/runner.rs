//! Executes a scenario's run matrix and reduces the results to a summary.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{FluidSystem, ScenarioConfig, ScenarioKind};
use crate::discrepancy::{l1_relative_distance, l1_relative_distance_pooled, l1_relative_fields, loglog_slope};
use crate::error::{Error, Result};
use crate::grid::{BoundaryKind, SpatialGrid};
use crate::kinetic::{KineticSolver, Snapshot, TimeController};
use crate::moments::{compute_global_moments, compute_moment_set, MomentSet};
use crate::ns::{run_system, FickVariant, FvBoundary, GlobalSystem, MultiSystem, NsGlobalState, NsMultiState, NsRunConfig, SourceMode};
use crate::params::{MixtureParams, Model};
use crate::state::{init_maxwellian_state, KineticState, SpeciesFields};

/// One kinetic entry of the run matrix.
#[derive(Debug, Clone, Serialize)]
pub struct KineticRun {
    pub model: Model,
    pub eps: f64,
    pub kappa: f64,
    pub t: f64,
    pub steps: usize,
    pub wall_time: f64,
    pub ledger: Vec<Snapshot>,
    #[serde(skip)]
    pub x: Vec<f64>,
    #[serde(skip)]
    pub snapshots: Vec<(f64, MomentSet)>,
    #[serde(skip)]
    pub moments: MomentSet,
    #[serde(skip)]
    pub state: KineticState,
    /// Full states at the snapshot times (discrepancy scenarios only).
    #[serde(skip)]
    pub states: Vec<(f64, KineticState)>,
}

impl KineticRun {
    pub fn label(&self) -> String {
        format!("{}-eps{:e}-kappa{:e}", self.model, self.eps, self.kappa)
    }
}

/// One fluid run; fields are reported through a [`MomentSet`] (species
/// velocities and temperatures equal the mixture ones for the global system).
#[derive(Debug, Clone, Serialize)]
pub struct FluidRun {
    pub system: FluidSystem,
    pub eps: f64,
    pub kappa: f64,
    pub t: f64,
    pub steps: usize,
    pub wall_time: f64,
    /// (t, domain totals of every conservative variable).
    pub totals: Vec<(f64, Vec<f64>)>,
    #[serde(skip)]
    pub x: Vec<f64>,
    #[serde(skip)]
    pub snapshots: Vec<(f64, MomentSet)>,
    #[serde(skip)]
    pub moments: MomentSet,
}

impl FluidRun {
    pub fn label(&self) -> String {
        let sys = match self.system {
            FluidSystem::Global => "ns-global",
            FluidSystem::Multi => "ns-multi",
            FluidSystem::Both => "ns",
        };
        format!("{sys}-eps{:e}-kappa{:e}", self.eps, self.kappa)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDistances {
    pub reference: Model,
    pub other: Model,
    /// Pooled over species, one entry per ε.
    pub distances: Vec<f64>,
    pub slope: f64,
    /// distances[s][e] for each species.
    pub per_species: Vec<Vec<f64>>,
    /// Snapshot times of the series.
    pub times: Vec<f64>,
    /// series[e][k][s]: per-species distance at times[k].
    pub series: Vec<Vec<Vec<f64>>>,
}

/// Relative L¹ errors of named fields for one kinetic/fluid pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldComparison {
    pub eps: f64,
    pub kappa: f64,
    pub system: FluidSystem,
    pub errors: BTreeMap<String, f64>,
}

impl FieldComparison {
    pub fn max_error(&self) -> f64 {
        self.errors.values().copied().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeciesDeviation {
    pub eps: f64,
    pub species: usize,
    /// ‖u_s − u‖₁ / ‖u‖₁.
    pub velocity: f64,
    /// ‖T_s − T‖₁ / ‖T‖₁.
    pub temperature: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Summary {
    Discrepancy { eps: Vec<f64>, pairs: Vec<PairDistances> },
    FluidComparison { comparisons: Vec<FieldComparison> },
    Riemann { deviations: Vec<SpeciesDeviation>, comparisons: Vec<FieldComparison> },
    StationaryShock {
        plateau_errors: BTreeMap<String, f64>,
        comparisons: Vec<FieldComparison>,
        /// Errors of the R-H-normalized profiles.
        profiles: Vec<FieldComparison>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub kinetic: Vec<KineticRun>,
    pub fluid: Vec<FluidRun>,
    pub summary: Summary,
    pub wall_time: f64,
}

fn with_context<T>(r: Result<T>, what: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::Config(m) => Error::Config(format!("{what}: {m}")),
        Error::NonFinite { field, cell, t } => Error::NonFinite { field: format!("{what}: {field}"), cell, t },
        other => other,
    })
}

pub fn run_kinetic(cfg: &ScenarioConfig, model: Model, eps: f64) -> Result<KineticRun> {
    let start = Instant::now();
    let params = cfg.params(model, eps)?;
    let (x, v) = cfg.grids()?;
    let xc = x.centers();
    let fields = cfg.initial_fields(&xc)?;
    let state = init_maxwellian_state(&fields, &params, &x, &v)?;
    let boundary = cfg.boundary_states(&params, &v)?;
    let solver = KineticSolver::new(params.clone(), x.clone(), v.clone(), cfg.solver, boundary)?;
    let controller = TimeController::new(cfg.time.schedule.clone(), cfg.time.t_end, &x, &v)?;
    let out = with_context(solver.advance(&state, &controller, &cfg.time.snapshots), &format!("{model} eps={eps:e}"))?;
    let mut snapshots = Vec::with_capacity(out.snapshots.len() + 1);
    if cfg.time.snapshots.contains(&0.0) {
        snapshots.push((0.0, compute_moment_set(&state, &params, &v)?));
    }
    for (t, s) in &out.snapshots {
        snapshots.push((*t, compute_moment_set(s, &params, &v)?));
    }
    let mut states = Vec::new();
    if cfg.kind == ScenarioKind::Discrepancy {
        if cfg.time.snapshots.contains(&0.0) {
            states.push((0.0, state.clone()));
        }
        states.extend(out.snapshots.iter().cloned());
    }
    Ok(KineticRun {
        model,
        eps,
        kappa: params.kappa,
        t: out.t,
        steps: out.steps,
        wall_time: start.elapsed().as_secs_f64(),
        ledger: out.ledger,
        x: xc,
        snapshots,
        moments: compute_moment_set(&out.state, &params, &v)?,
        state: out.state,
        states,
    })
}

fn fluid_boundary(cfg: &ScenarioConfig, to_cons: &dyn Fn(&[SpeciesFields]) -> Vec<Vec<f64>>) -> Result<FvBoundary> {
    Ok(match cfg.grid.boundary {
        BoundaryKind::Periodic => FvBoundary::Periodic,
        BoundaryKind::FreeFlow => FvBoundary::FreeFlow,
        BoundaryKind::InflowOutflow => {
            let rh = cfg.shock_states()?;
            let side = |st: &[(f64, f64, f64)]| {
                let f: Vec<SpeciesFields> = st.iter().map(|&(n, u, t)| SpeciesFields::uniform(1, n, u, t)).collect();
                to_cons(&f).into_iter().map(|row| row[0]).collect::<Vec<f64>>()
            };
            FvBoundary::Fixed { left: side(&rh.left), right: side(&rh.right) }
        }
    })
}

fn global_state(fields: &[SpeciesFields], params: &MixtureParams) -> Result<NsGlobalState> {
    let nx = fields[0].len();
    let l = fields.len();
    let mut u = vec![0.0; nx];
    let mut t = vec![0.0; nx];
    for i in 0..nx {
        let ns: Vec<f64> = (0..l).map(|s| fields[s].n[i]).collect();
        let us: Vec<f64> = (0..l).map(|s| fields[s].u[i]).collect();
        let ts: Vec<f64> = (0..l).map(|s| fields[s].t[i]).collect();
        let g = compute_global_moments(&ns, &us, &ts, &params.masses, params.k_gas)?;
        u[i] = g.u;
        t[i] = g.t;
    }
    Ok(NsGlobalState { n: fields.iter().map(|f| f.n.clone()).collect(), u, t })
}

fn global_moments(st: &NsGlobalState, params: &MixtureParams) -> Result<MomentSet> {
    let species = st.n.iter().map(|n| SpeciesFields { n: n.clone(), u: st.u.clone(), t: st.t.clone() }).collect();
    MomentSet::from_species(species, params)
}

fn multi_moments(st: &NsMultiState, params: &MixtureParams) -> Result<MomentSet> {
    let species = (0..st.n.len()).map(|s| SpeciesFields { n: st.n[s].clone(), u: st.u[s].clone(), t: st.t[s].clone() }).collect();
    MomentSet::from_species(species, params)
}

/// Fluid run of one system. `eps` scales the dissipative terms (0 for Euler).
pub fn run_fluid(cfg: &ScenarioConfig, system: FluidSystem, eps: f64, kappa: f64) -> Result<FluidRun> {
    let start = Instant::now();
    let fc = cfg.fluid.as_ref().ok_or_else(|| Error::Config(format!("{} has no fluid section", cfg.name)))?;
    let nx = fc.nx.unwrap_or(cfg.grid.nx);
    let x = SpatialGrid::new(cfg.grid.x[0], cfg.grid.x[1], nx, cfg.grid.boundary)?;
    let xc = x.centers();
    let fields = cfg.initial_fields(&xc)?;
    // the BBGSP model is the one whose limits these systems are
    let params = cfg.params(Model::Bbgsp, if eps > 0.0 { eps } else { 1.0 })?;
    let mut rc = NsRunConfig::new(fc.method, cfg.time.t_end);
    rc.cfl_adv = fc.cfl;
    rc.art_visc = fc.art_visc;
    rc.snapshot_times = cfg.time.snapshots.clone();
    let what = format!("fluid {system:?} eps={eps:e}");
    match system {
        FluidSystem::Global => {
            let sys = GlobalSystem::new(params.clone(), FickVariant::AapBbgsp, eps);
            let to_cons = |f: &[SpeciesFields]| global_state(f, &params).map(|s| s.to_conservative(&params)).unwrap_or_default();
            let bc = fluid_boundary(cfg, &to_cons)?;
            let u0 = global_state(&fields, &params)?.to_conservative(&params);
            let run = with_context(run_system(&sys, u0, x.dx, x.length(), &bc, &rc), &what)?;
            let snaps = run
                .snapshots
                .iter()
                .map(|(t, u)| Ok((*t, global_moments(&NsGlobalState::from_conservative(u, &params)?, &params)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(FluidRun {
                system,
                eps,
                kappa,
                t: run.t,
                steps: run.steps,
                wall_time: start.elapsed().as_secs_f64(),
                totals: run.totals,
                x: xc,
                snapshots: snaps,
                moments: global_moments(&NsGlobalState::from_conservative(&run.fields, &params)?, &params)?,
            })
        }
        FluidSystem::Multi => {
            let probe = MultiSystem::new(params.clone(), eps, kappa, SourceMode::Explicit)?;
            let st0 = NsMultiState {
                n: fields.iter().map(|f| f.n.clone()).collect(),
                u: fields.iter().map(|f| f.u.clone()).collect(),
                t: fields.iter().map(|f| f.t.clone()).collect(),
            };
            let u0 = st0.to_conservative(&params);
            // stiff exchange: backward Euler once a step resolves less than ~5 relaxation times
            let dt = crate::ns::stable_dt(&probe, &u0, x.dx, &rc)?;
            let mode = if dt * probe.exchange_rate(&u0) > 0.2 { SourceMode::Implicit } else { SourceMode::Explicit };
            let sys = MultiSystem::new(params.clone(), eps, kappa, mode)?;
            let to_cons = |f: &[SpeciesFields]| {
                NsMultiState {
                    n: f.iter().map(|f| f.n.clone()).collect(),
                    u: f.iter().map(|f| f.u.clone()).collect(),
                    t: f.iter().map(|f| f.t.clone()).collect(),
                }
                .to_conservative(&params)
            };
            let bc = fluid_boundary(cfg, &to_cons)?;
            let run = with_context(run_system(&sys, u0, x.dx, x.length(), &bc, &rc), &what)?;
            let snaps = run
                .snapshots
                .iter()
                .map(|(t, u)| Ok((*t, multi_moments(&NsMultiState::from_conservative(u, &params)?, &params)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(FluidRun {
                system,
                eps,
                kappa,
                t: run.t,
                steps: run.steps,
                wall_time: start.elapsed().as_secs_f64(),
                totals: run.totals,
                x: xc,
                snapshots: snaps,
                moments: multi_moments(&NsMultiState::from_conservative(&run.fields, &params)?, &params)?,
            })
        }
        FluidSystem::Both => Err(Error::Config("run_fluid needs a single system".into())),
    }
}

/// Piecewise-linear interpolation of (xs, ys) at `at`; constant beyond the ends.
pub fn interp_linear(xs: &[f64], ys: &[f64], at: &[f64]) -> Vec<f64> {
    at.iter()
        .map(|&x| {
            if x <= xs[0] {
                return ys[0];
            }
            if x >= xs[xs.len() - 1] {
                return ys[ys.len() - 1];
            }
            let j = xs.partition_point(|v| *v <= x) - 1;
            let w = (x - xs[j]) / (xs[j + 1] - xs[j]);
            ys[j] * (1.0 - w) + ys[j + 1] * w
        })
        .collect()
}

/// Relative L¹ errors of the named fields of `other` against `reference`,
/// after interpolating `other` onto the reference points.
pub fn compare_fields(reference: &MomentSet, rx: &[f64], other: &MomentSet, ox: &[f64], masses: &[f64], per_species_velocity: bool) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    let on = |a: &[f64]| interp_linear(ox, a, rx);
    for (s, m) in masses.iter().enumerate() {
        let r: Vec<f64> = reference.species[s].n.iter().map(|n| n * m).collect();
        let o: Vec<f64> = other.species[s].n.iter().map(|n| n * m).collect();
        out.insert(format!("rho_{}", s + 1), l1_relative_fields(&r, &on(&o))?);
        if per_species_velocity {
            out.insert(format!("u_{}", s + 1), l1_relative_fields(&reference.species[s].u, &on(&other.species[s].u))?);
            out.insert(format!("T_{}", s + 1), l1_relative_fields(&reference.species[s].t, &on(&other.species[s].t))?);
        }
    }
    if !per_species_velocity {
        out.insert("u".into(), l1_relative_fields(&reference.u, &on(&other.u))?);
        out.insert("T".into(), l1_relative_fields(&reference.t, &on(&other.t))?);
    }
    Ok(out)
}

/// Mean of `field` over the first or last `frac` of the points.
fn plateau(field: &[f64], frac: f64, left: bool) -> f64 {
    let k = ((field.len() as f64 * frac) as usize).max(1);
    let part = if left { &field[..k] } else { &field[field.len() - k..] };
    part.iter().sum::<f64>() / k as f64
}

/// Relative deviations of the downstream/upstream plateaus from the R-H states.
pub fn plateau_errors(cfg: &ScenarioConfig, m: &MomentSet) -> Result<BTreeMap<String, f64>> {
    let rh = cfg.shock_states()?;
    let mut out = BTreeMap::new();
    let frac = 0.15;
    for (side, states, left) in [("left", &rh.left, true), ("right", &rh.right, false)] {
        for (s, st) in states.iter().enumerate() {
            out.insert(format!("{side}_n_{}", s + 1), (plateau(&m.species[s].n, frac, left) / st.0 - 1.0).abs());
        }
        out.insert(format!("{side}_u"), (plateau(&m.u, frac, left) / states[0].1 - 1.0).abs());
        out.insert(format!("{side}_T"), (plateau(&m.t, frac, left) / states[0].2 - 1.0).abs());
    }
    Ok(out)
}

/// Relative L¹ errors of profiles rescaled to (q − q_left)/(q_right − q_left)
/// with the R-H states, `other` interpolated onto the reference points.
pub fn normalized_profile_errors(cfg: &ScenarioConfig, reference: &MomentSet, rx: &[f64], other: &MomentSet, ox: &[f64]) -> Result<BTreeMap<String, f64>> {
    let rh = cfg.shock_states()?;
    let norm = |a: &[f64], l: f64, r: f64| -> Vec<f64> { a.iter().map(|q| (q - l) / (r - l)).collect() };
    let mut out = BTreeMap::new();
    let mut put = |name: String, a: &[f64], b: &[f64], l: f64, r: f64| -> Result<()> {
        let b = interp_linear(ox, b, rx);
        out.insert(name, l1_relative_fields(&norm(a, l, r), &norm(&b, l, r))?);
        Ok(())
    };
    for s in 0..cfg.species() {
        put(format!("n_{}", s + 1), &reference.species[s].n, &other.species[s].n, rh.left[s].0, rh.right[s].0)?;
    }
    put("u".into(), &reference.u, &other.u, rh.left[0].1, rh.right[0].1)?;
    put("T".into(), &reference.t, &other.t, rh.left[0].2, rh.right[0].2)?;
    Ok(out)
}

fn species_deviation(run: &KineticRun, species: usize) -> Result<SpeciesDeviation> {
    let m = &run.moments;
    Ok(SpeciesDeviation {
        eps: run.eps,
        species,
        velocity: l1_relative_fields(&m.u, &m.species[species].u)?,
        temperature: l1_relative_fields(&m.t, &m.species[species].t)?,
    })
}

/// Run every entry of the scenario's matrix and reduce to a summary.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<ScenarioReport> {
    cfg.validate()?;
    let start = Instant::now();
    let jobs: Vec<(Model, f64)> = cfg.runs.models.iter().flat_map(|m| cfg.runs.eps.iter().map(move |e| (*m, *e))).collect();
    let kinetic: Vec<KineticRun> = jobs.par_iter().map(|(m, e)| run_kinetic(cfg, *m, *e)).collect::<Result<_>>()?;

    let masses = &cfg.mixture.masses;
    let (summary, fluid) = match cfg.kind {
        ScenarioKind::Discrepancy => {
            let (x, v) = cfg.grids()?;
            let find = |m: Model, e: f64| kinetic.iter().find(|r| r.model == m && r.eps == e);
            let mut pairs = Vec::new();
            for other in [Model::Bbgsp, Model::Gs] {
                if !cfg.runs.models.contains(&Model::Aap) || !cfg.runs.models.contains(&other) {
                    continue;
                }
                let distances = cfg
                    .runs
                    .eps
                    .iter()
                    .map(|&e| l1_relative_distance_pooled(&find(Model::Aap, e).unwrap().state, &find(other, e).unwrap().state, &x, &v))
                    .collect::<Result<Vec<_>>>()?;
                let by_eps = cfg
                    .runs
                    .eps
                    .iter()
                    .map(|&e| l1_relative_distance(&find(Model::Aap, e).unwrap().state, &find(other, e).unwrap().state, &x, &v))
                    .collect::<Result<Vec<_>>>()?;
                let per_species = (0..cfg.species()).map(|s| by_eps.iter().map(|d| d[s]).collect()).collect();
                let times: Vec<f64> = find(Model::Aap, cfg.runs.eps[0]).unwrap().states.iter().map(|(t, _)| *t).collect();
                let series = cfg
                    .runs
                    .eps
                    .iter()
                    .map(|&e| {
                        let (a, b) = (find(Model::Aap, e).unwrap(), find(other, e).unwrap());
                        a.states.iter().zip(&b.states).map(|((_, sa), (_, sb))| l1_relative_distance(sa, sb, &x, &v)).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let slope = if cfg.runs.eps.len() >= 2 { loglog_slope(&cfg.runs.eps, &distances).unwrap_or(f64::NAN) } else { f64::NAN };
                pairs.push(PairDistances { reference: Model::Aap, other, distances, slope, per_species, times, series });
            }
            (Summary::Discrepancy { eps: cfg.runs.eps.clone(), pairs }, Vec::new())
        }
        ScenarioKind::NsGlobal | ScenarioKind::NsMulti | ScenarioKind::StationaryShock => {
            let fc = cfg.fluid.as_ref().ok_or_else(|| Error::Config(format!("{} needs a fluid section", cfg.name)))?;
            let system = if cfg.kind == ScenarioKind::NsMulti { FluidSystem::Multi } else { fc.system };
            let fluid: Vec<FluidRun> = kinetic
                .par_iter()
                .map(|k| run_fluid(cfg, system, fc.eps.unwrap_or(k.eps), k.kappa))
                .collect::<Result<_>>()?;
            let comparisons = kinetic
                .iter()
                .zip(&fluid)
                .map(|(k, f)| {
                    Ok(FieldComparison {
                        eps: k.eps,
                        kappa: k.kappa,
                        system,
                        errors: compare_fields(&k.moments, &k.x, &f.moments, &f.x, masses, system == FluidSystem::Multi)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let summary = if cfg.kind == ScenarioKind::StationaryShock {
                let profiles = kinetic
                    .iter()
                    .zip(&fluid)
                    .map(|(k, f)| {
                        Ok(FieldComparison {
                            eps: k.eps,
                            kappa: k.kappa,
                            system,
                            errors: normalized_profile_errors(cfg, &k.moments, &k.x, &f.moments, &f.x)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Summary::StationaryShock { plateau_errors: plateau_errors(cfg, &kinetic[0].moments)?, comparisons, profiles }
            } else {
                Summary::FluidComparison { comparisons }
            };
            (summary, fluid)
        }
        ScenarioKind::Riemann => {
            let fc = cfg.fluid.as_ref().ok_or_else(|| Error::Config(format!("{} needs a fluid section", cfg.name)))?;
            let systems = match fc.system {
                FluidSystem::Both => vec![FluidSystem::Global, FluidSystem::Multi],
                s => vec![s],
            };
            let fjobs: Vec<(FluidSystem, f64)> = systems
                .iter()
                .flat_map(|s| {
                    let ks: Vec<f64> = if *s == FluidSystem::Global { vec![kinetic[0].kappa] } else { kinetic.iter().map(|k| k.kappa).collect() };
                    ks.into_iter().map(move |k| (*s, k))
                })
                .collect();
            let fluid: Vec<FluidRun> = fjobs.par_iter().map(|(s, k)| run_fluid(cfg, *s, fc.eps.unwrap_or(0.0), *k)).collect::<Result<_>>()?;
            let mut comparisons = Vec::new();
            for k in &kinetic {
                for f in &fluid {
                    let relevant = f.system == FluidSystem::Global || f.kappa == k.kappa;
                    if relevant {
                        comparisons.push(FieldComparison {
                            eps: k.eps,
                            kappa: k.kappa,
                            system: f.system,
                            errors: compare_fields(&k.moments, &k.x, &f.moments, &f.x, masses, f.system == FluidSystem::Multi)?,
                        });
                    }
                }
            }
            let deviations = kinetic
                .iter()
                .flat_map(|k| (0..cfg.species()).map(move |s| species_deviation(k, s)))
                .collect::<Result<Vec<_>>>()?;
            (Summary::Riemann { deviations, comparisons }, fluid)
        }
    };
    Ok(ScenarioReport { scenario: cfg.name.clone(), kinetic, fluid, summary, wall_time: start.elapsed().as_secs_f64() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_is_exact_on_lines_and_clamps() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 3.0, 5.0, 7.0];
        assert_eq!(interp_linear(&xs, &ys, &[-1.0, 0.5, 2.25, 4.0]), vec![1.0, 2.0, 5.5, 7.0]);
    }

    #[test]
    fn plateau_means() {
        let f: Vec<f64> = (0..20).map(|i| if i < 10 { 1.0 } else { 2.0 }).collect();
        assert_eq!(plateau(&f, 0.15, true), 1.0);
        assert_eq!(plateau(&f, 0.15, false), 2.0);
    }
}
