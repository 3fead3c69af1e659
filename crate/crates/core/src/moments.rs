//! Velocity moments of Chu pairs, per species and for the mixture.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{SpatialGrid, VelocityGrid};
use crate::params::MixtureParams;
use crate::state::{ChuPair, KineticState, SpeciesFields};

/// Densities below this are treated as vacuum.
pub const VACUUM_DENSITY: f64 = 1e-30;

/// Raw moments of one cell: (∫g1, ∫v g1, ∫v² g1, ∫g2).
#[inline]
pub fn raw_moments(g1: &[f64], g2: &[f64], v: &VelocityGrid, w: &[f64]) -> [f64; 4] {
    let mut r = [0.0; 4];
    for j in 0..w.len() {
        let vj = v.node(j);
        let a = w[j] * g1[j];
        r[0] += a;
        r[1] += a * vj;
        r[2] += a * vj * vj;
        r[3] += w[j] * g2[j];
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellMoments {
    pub n: f64,
    pub u: f64,
    pub t: f64,
    pub vacuum: bool,
}

/// (n, u, T) of one cell. A vacuum cell reports zeros with `vacuum` set.
pub fn cell_moments(g1: &[f64], g2: &[f64], m: f64, k: f64, v: &VelocityGrid, w: &[f64]) -> CellMoments {
    let mut n = 0.0;
    let mut nu = 0.0;
    for j in 0..w.len() {
        let a = w[j] * g1[j];
        n += a;
        nu += a * v.node(j);
    }
    if !(n > VACUUM_DENSITY) {
        return CellMoments { n: 0.0, u: 0.0, t: 0.0, vacuum: true };
    }
    let u = nu / n;
    let mut c2 = 0.0;
    let mut e2 = 0.0;
    for j in 0..w.len() {
        let d = v.node(j) - u;
        c2 += w[j] * d * d * g1[j];
        e2 += w[j] * g2[j];
    }
    CellMoments { n, u, t: m * (c2 + e2) / (3.0 * n * k), vacuum: false }
}

/// Per-cell (n_s, u_s, T_s) of one species. Errors on a non-positive density.
pub fn compute_species_moments(pair: &ChuPair, m: f64, k: f64, v: &VelocityGrid) -> Result<SpeciesFields> {
    let w = v.weights();
    let mut out = SpeciesFields { n: vec![0.0; pair.nx], u: vec![0.0; pair.nx], t: vec![0.0; pair.nx] };
    for i in 0..pair.nx {
        let (g1, g2) = pair.cell(i);
        let c = cell_moments(g1, g2, m, k, v, &w);
        if c.vacuum {
            return Err(Error::NonPositive { what: "density", value: 0.0, cell: i });
        }
        out.n[i] = c.n;
        out.u[i] = c.u;
        out.t[i] = c.t;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlobalMoments {
    pub n: f64,
    pub rho: f64,
    pub u: f64,
    pub t: f64,
}

/// Mixture (n, ρ, u, T) from species values:
/// ρu = Σρ_s u_s and 3nKT = 3Σ n_s K T_s + Σ ρ_s |u_s − u|².
pub fn compute_global_moments(n: &[f64], u: &[f64], t: &[f64], m: &[f64], k: f64) -> Result<GlobalMoments> {
    let mut nt = 0.0;
    let mut rho = 0.0;
    let mut mom = 0.0;
    for s in 0..n.len() {
        if n[s] < 0.0 {
            return Err(Error::NonPositive { what: "species density", value: n[s], cell: s });
        }
        nt += n[s];
        rho += m[s] * n[s];
        mom += m[s] * n[s] * u[s];
    }
    if !(nt > VACUUM_DENSITY) {
        return Err(Error::Vacuum);
    }
    let ug = mom / rho;
    let mut e = 0.0;
    for s in 0..n.len() {
        let d = u[s] - ug;
        e += 3.0 * n[s] * k * t[s] + m[s] * n[s] * d * d;
    }
    Ok(GlobalMoments { n: nt, rho, u: ug, t: e / (3.0 * nt * k) })
}

/// Per-species and mixture fields over the whole grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    pub species: Vec<SpeciesFields>,
    pub n: Vec<f64>,
    pub rho: Vec<f64>,
    pub u: Vec<f64>,
    pub t: Vec<f64>,
}

impl MomentSet {
    pub fn from_species(species: Vec<SpeciesFields>, params: &MixtureParams) -> Result<Self> {
        let nx = species[0].len();
        let ls = species.len();
        let mut out = MomentSet {
            species,
            n: vec![0.0; nx],
            rho: vec![0.0; nx],
            u: vec![0.0; nx],
            t: vec![0.0; nx],
        };
        let (mut ns, mut us, mut ts) = (vec![0.0; ls], vec![0.0; ls], vec![0.0; ls]);
        for i in 0..nx {
            for s in 0..ls {
                ns[s] = out.species[s].n[i];
                us[s] = out.species[s].u[i];
                ts[s] = out.species[s].t[i];
            }
            let g = compute_global_moments(&ns, &us, &ts, &params.masses, params.k_gas)?;
            out.n[i] = g.n;
            out.rho[i] = g.rho;
            out.u[i] = g.u;
            out.t[i] = g.t;
        }
        Ok(out)
    }

    /// Mass density ρ_s = m_s n_s of species `s`.
    pub fn rho_s(&self, s: usize, m: f64) -> Vec<f64> {
        self.species[s].n.iter().map(|n| m * n).collect()
    }
}

pub fn compute_moment_set(state: &KineticState, params: &MixtureParams, v: &VelocityGrid) -> Result<MomentSet> {
    let species = state
        .species
        .iter()
        .zip(&params.masses)
        .map(|(p, &m)| compute_species_moments(p, m, params.k_gas, v))
        .collect::<Result<Vec<_>>>()?;
    MomentSet::from_species(species, params)
}

/// Domain totals: species masses Σρ_s dx, total momentum and total energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConservedTotals {
    pub mass: Vec<f64>,
    pub momentum: f64,
    pub energy: f64,
}

pub fn conserved_totals(state: &KineticState, params: &MixtureParams, x: &SpatialGrid, v: &VelocityGrid) -> ConservedTotals {
    let w = v.weights();
    let mut mass = Vec::with_capacity(state.species.len());
    let mut momentum = 0.0;
    let mut energy = 0.0;
    for (pair, &m) in state.species.iter().zip(&params.masses) {
        let mut ms = 0.0;
        for i in 0..pair.nx {
            let (g1, g2) = pair.cell(i);
            let r = raw_moments(g1, g2, v, &w);
            ms += m * r[0];
            momentum += m * r[1] * x.dx;
            energy += 0.5 * m * (r[2] + r[3]) * x.dx;
        }
        mass.push(ms * x.dx);
    }
    ConservedTotals { mass, momentum, energy }
}

/// Reduced entropy Σ_s ∬ g1 log g1 dv dx. Nodes with g1 ≤ 1e-300 are skipped.
pub fn entropy_functional(state: &KineticState, x: &SpatialGrid, v: &VelocityGrid) -> f64 {
    const FLOOR: f64 = 1e-300;
    let w = v.weights();
    let nvn = v.len();
    let mut h = 0.0;
    for pair in &state.species {
        for (idx, &g) in pair.g1.iter().enumerate() {
            if g > FLOOR {
                h += w[idx % nvn] * g * g.ln();
            }
        }
    }
    h * x.dx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grids, BoundaryKind};
    use crate::params::{Model, UnitSystem};
    use crate::state::{fill_maxwellian, init_maxwellian_state};
    use approx::assert_relative_eq;

    fn single(m: f64) -> MixtureParams {
        MixtureParams::new(vec![m], vec![vec![1.0]], UnitSystem::Abstract, Model::Gs, 1.0, 1.0).unwrap()
    }

    #[test]
    fn maxwellian_round_trip() {
        let v = VelocityGrid::new(-6.0, 6.0, 60).unwrap();
        let w = v.weights();
        let (mut g1, mut g2) = (vec![0.0; v.len()], vec![0.0; v.len()]);
        fill_maxwellian(&mut g1, &mut g2, 2.0, 0.3, 1.7, 3.0, 1.0, &v);
        let c = cell_moments(&g1, &g2, 3.0, 1.0, &v, &w);
        assert_relative_eq!(c.n, 2.0, max_relative = 1e-8);
        assert_relative_eq!(c.u, 0.3, max_relative = 1e-8);
        assert_relative_eq!(c.t, 1.7, max_relative = 1e-8);
    }

    #[test]
    fn single_node_distribution() {
        let v = VelocityGrid::new(-2.0, 2.0, 8).unwrap();
        let w = v.weights();
        let mut g1 = vec![0.0; v.len()];
        let mut g2 = vec![0.0; v.len()];
        g1[6] = 3.0;
        g2[6] = 1.5;
        let c = cell_moments(&g1, &g2, 2.0, 1.0, &v, &w);
        assert_relative_eq!(c.n, 3.0 * v.dv);
        assert_relative_eq!(c.u, v.node(6));
        // 3 n K T = m ∫g2
        assert_relative_eq!(c.t, 2.0 * 1.5 * v.dv / (3.0 * c.n), max_relative = 1e-14);
    }

    #[test]
    fn two_beam_adds_drift_temperature() {
        let v = VelocityGrid::new(-12.0, 12.0, 240).unwrap();
        let w = v.weights();
        let (m, k, t0, a) = (2.0, 1.0, 1.0, 1.5);
        let (mut p1, mut p2) = (vec![0.0; v.len()], vec![0.0; v.len()]);
        let (mut q1, mut q2) = (vec![0.0; v.len()], vec![0.0; v.len()]);
        fill_maxwellian(&mut p1, &mut p2, 0.5, a, t0, m, k, &v);
        fill_maxwellian(&mut q1, &mut q2, 0.5, -a, t0, m, k, &v);
        let g1: Vec<f64> = p1.iter().zip(&q1).map(|(x, y)| x + y).collect();
        let g2: Vec<f64> = p2.iter().zip(&q2).map(|(x, y)| x + y).collect();
        let c = cell_moments(&g1, &g2, m, k, &v, &w);
        assert!(c.u.abs() < 1e-12);
        assert_relative_eq!(c.t, t0 + m * a * a / (3.0 * k), max_relative = 1e-9);
    }

    #[test]
    fn vacuum_is_flagged_without_nan() {
        let v = VelocityGrid::new(-2.0, 2.0, 8).unwrap();
        let z = vec![0.0; v.len()];
        let c = cell_moments(&z, &z, 1.0, 1.0, &v, &v.weights());
        assert!(c.vacuum && c.t == 0.0 && c.u == 0.0);
        assert!(matches!(compute_global_moments(&[0.0], &[0.0], &[0.0], &[1.0], 1.0), Err(Error::Vacuum)));
    }

    #[test]
    fn global_moments_examples() {
        let g = compute_global_moments(&[2.0], &[0.4], &[1.3], &[3.0], 1.0).unwrap();
        assert_eq!((g.n, g.rho), (2.0, 6.0));
        assert_relative_eq!(g.u, 0.4, max_relative = 1e-15);
        assert_relative_eq!(g.t, 1.3, max_relative = 1e-15);

        let (a, t0, k) = (0.7, 2.0, 1.0);
        let g = compute_global_moments(&[1.0, 2.0], &[a, -a], &[t0, t0], &[2.0, 1.0], k).unwrap();
        assert!(g.u.abs() < 1e-15);
        assert_relative_eq!(3.0 * g.n * k * g.t, 3.0 * 3.0 * k * t0 + 4.0 * a * a, max_relative = 1e-14);

        // He–Ar left state in kg/mol
        let m = [4e-3, 40e-3];
        let n = [0.1598 / m[0], 1.6030 / m[1]];
        assert_relative_eq!(n[0], 39.95, max_relative = 1e-12);
        assert_relative_eq!(n[1], 40.075, max_relative = 1e-12);
        let g = compute_global_moments(&n, &[0.0, 0.0], &[300.0, 300.0], &m, 8.3145).unwrap();
        assert_relative_eq!(g.rho, 1.7628, max_relative = 1e-12);
    }

    #[test]
    fn energy_identity_two_ways() {
        let m = [58.5, 18.0, 40.0];
        let n = [0.3, 1.1, 0.7];
        let u = [1.2, -0.4, 0.25];
        let t = [2.0, 3.5, 0.9];
        let k = 1.0;
        let g = compute_global_moments(&n, &u, &t, &m, k).unwrap();
        // total energy: Σ ½ρ_s u_s² + 3/2 n_s K T_s = ½ρu² + 3/2 n K T
        let e_s: f64 = (0..3).map(|s| 0.5 * m[s] * n[s] * u[s] * u[s] + 1.5 * n[s] * k * t[s]).sum();
        let e_g = 0.5 * g.rho * g.u * g.u + 1.5 * g.n * k * g.t;
        assert_relative_eq!(e_s, e_g, max_relative = 1e-13);
    }

    #[test]
    fn moment_quadrature_is_linear() {
        let v = VelocityGrid::new(-5.0, 5.0, 40).unwrap();
        let w = v.weights();
        let f: Vec<f64> = (0..v.len()).map(|j| (j as f64 * 0.3).sin().abs()).collect();
        let g: Vec<f64> = (0..v.len()).map(|j| (j as f64 * 0.11).cos().abs()).collect();
        let h: Vec<f64> = f.iter().zip(&g).map(|(a, b)| 2.0 * a - 0.5 * b).collect();
        let rf = raw_moments(&f, &g, &v, &w);
        let rg = raw_moments(&g, &f, &v, &w);
        let hh: Vec<f64> = g.iter().zip(&f).map(|(a, b)| 2.0 * a - 0.5 * b).collect();
        let rh = raw_moments(&h, &hh, &v, &w);
        for q in 0..4 {
            assert_relative_eq!(rh[q], 2.0 * rf[q] - 0.5 * rg[q], epsilon = 1e-12);
        }
    }

    #[test]
    fn init_then_moments_round_trip_on_scenario_grid() {
        let (x, v) = make_grids((-1.0, 1.0, 20), (-15.0, 15.0, 60), BoundaryKind::Periodic).unwrap();
        let p = single(18.0);
        let t0 = 4.0 / (1.0 / 58.5 + 1.0 / 18.0 + 1.0 / 40.0 + 1.0 / 36.5);
        assert_relative_eq!(t0, 31.988, epsilon = 5e-4);
        let mut f = SpeciesFields::uniform(x.nx, 1.0 / 18.0, 0.0, t0);
        for i in 0..x.nx {
            f.u[i] = 0.3 * (std::f64::consts::PI * x.center(i)).sin();
        }
        let st = init_maxwellian_state(&[f.clone()], &p, &x, &v).unwrap();
        let back = compute_species_moments(&st.species[0], 18.0, 1.0, &v).unwrap();
        for i in 0..x.nx {
            assert_relative_eq!(back.n[i], f.n[i], max_relative = 1e-8);
            assert!((back.u[i] - f.u[i]).abs() < 1e-8);
            assert_relative_eq!(back.t[i], f.t[i], max_relative = 1e-8);
        }
    }

    #[test]
    fn entropy_scaling() {
        let (x, v) = make_grids((0.0, 1.0, 4), (-6.0, 6.0, 48), BoundaryKind::Periodic).unwrap();
        let p = single(1.0);
        let st = init_maxwellian_state(&[SpeciesFields::uniform(4, 1.0, 0.0, 1.0)], &p, &x, &v).unwrap();
        let h = entropy_functional(&st, &x, &v);
        let c = 2.5;
        let mut sc = st.clone();
        sc.species[0].g1.iter_mut().for_each(|g| *g *= c);
        let mass: f64 = {
            let w = v.weights();
            st.species[0].g1.iter().enumerate().map(|(i, g)| g * w[i % v.len()]).sum::<f64>() * x.dx
        };
        assert_relative_eq!(entropy_functional(&sc, &x, &v), c * h + c * c.ln() * mass, max_relative = 1e-12);
    }
}
