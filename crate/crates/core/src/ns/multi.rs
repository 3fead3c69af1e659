//! Navier–Stokes system with one velocity and one temperature per species,
//! coupled through relaxation sources at scale κ.
//!
//! Conservative variables, species-major by kind:
//! n_1 … n_L, ρ_1u_1 … ρ_Lu_L, E_1 … E_L with E_s = ½ρ_s u_s² + (3/2) n_s K T_s.

use serde::{Deserialize, Serialize};

use super::rk4::Fields;
use super::spectral::SpectralDiff;
use super::ConservationSystem;
use crate::closures::pair_exchange;
use crate::error::{Error, Result};
use crate::kinetic::moment_solve;
use crate::params::{MixtureParams, Model};

/// Σ_k 𝓡_sk / κ and Σ_k 𝓢_sk / κ for every species at one point.
pub fn exchange_terms(n: &[f64], u: &[f64], t: &[f64], params: &MixtureParams, kappa: f64) -> (Vec<f64>, Vec<f64>) {
    let l = params.species();
    let mut r = vec![0.0; l];
    let mut e = vec![0.0; l];
    for s in 0..l {
        for k in 0..l {
            if k != s {
                let (a, b) = pair_exchange(s, k, n, u, t, params);
                r[s] += a / kappa;
                e[s] += b / kappa;
            }
        }
    }
    (r, e)
}

/// Per-species stress P_s and heat flux q_s at one point, given the
/// gradients of u_s and T_s.
pub fn species_fluxes(n: &[f64], u: &[f64], t: &[f64], du: &[f64], dt: &[f64], params: &MixtureParams) -> (Vec<f64>, Vec<f64>) {
    let l = params.species();
    let m = &params.masses;
    let kg = params.k_gas;
    let mut p = vec![0.0; l];
    let mut q = vec![0.0; l];
    for s in 0..l {
        let nu_ss = params.lam(s, s) * n[s];
        if !(nu_ss > 0.0) {
            continue;
        }
        let mut drag = 0.0;
        let mut heat = 0.0;
        let mut third = 0.0;
        for k in 0..l {
            if k == s {
                continue;
            }
            let nu_sk = params.lam(s, k) * n[k];
            let a = m[k] / (m[s] + m[k]);
            let dv = u[k] - u[s];
            drag += nu_sk * a * a * dv * dv;
            heat += nu_sk * a * a / (m[s] + m[k]) * kg * (t[k] - t[s]) * dv;
            third += nu_sk * a * a * (5.0 * m[k] / (m[s] + m[k]) - a) * dv * dv * dv;
        }
        let ms_ns = m[s] * n[s] / nu_ss;
        p[s] = -4.0 / 3.0 * n[s] * kg * t[s] / nu_ss * du[s] + 2.0 / 3.0 * ms_ns * drag;
        q[s] = -2.5 * n[s] * kg * kg * t[s] / (m[s] * nu_ss) * dt[s] + 5.0 * ms_ns * heat + ms_ns * third / 3.0;
    }
    (p, q)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NsMultiState {
    pub n: Vec<Vec<f64>>,
    pub u: Vec<Vec<f64>>,
    pub t: Vec<Vec<f64>>,
}

impl NsMultiState {
    pub fn to_conservative(&self, params: &MixtureParams) -> Fields {
        let l = self.n.len();
        let mut out: Fields = self.n.clone();
        for s in 0..l {
            out.push(self.n[s].iter().zip(&self.u[s]).map(|(n, u)| params.masses[s] * n * u).collect());
        }
        for s in 0..l {
            let e = (0..self.n[s].len())
                .map(|i| {
                    let (n, u) = (self.n[s][i], self.u[s][i]);
                    0.5 * params.masses[s] * n * u * u + 1.5 * n * params.k_gas * self.t[s][i]
                })
                .collect();
            out.push(e);
        }
        out
    }

    pub fn from_conservative(c: &Fields, params: &MixtureParams) -> Result<Self> {
        let l = params.species();
        let nx = c[0].len();
        let mut u = vec![vec![0.0; nx]; l];
        let mut t = vec![vec![0.0; nx]; l];
        for s in 0..l {
            let m = params.masses[s];
            for i in 0..nx {
                let n = c[s][i];
                if !(n > 0.0) {
                    return Err(Error::NonPositive { what: "density", value: n, cell: i });
                }
                u[s][i] = c[l + s][i] / (m * n);
                t[s][i] = (c[2 * l + s][i] - 0.5 * m * n * u[s][i] * u[s][i]) / (1.5 * n * params.k_gas);
                if !(t[s][i] > 0.0) {
                    return Err(Error::NonPositive { what: "temperature", value: t[s][i], cell: i });
                }
            }
        }
        Ok(Self { n: c[..l].to_vec(), u, t })
    }

    fn point(rows: &[Vec<f64>], i: usize) -> Vec<f64> {
        rows.iter().map(|r| r[i]).collect()
    }
}

/// How the exchange sources are advanced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceMode {
    Explicit,
    /// Backward-Euler sub-step after the flux update.
    Implicit,
}

#[derive(Debug, Clone)]
pub struct MultiSystem {
    pub params: MixtureParams,
    pub eps: f64,
    pub kappa: f64,
    pub sources: SourceMode,
    relax_params: MixtureParams,
}

impl MultiSystem {
    pub fn new(params: MixtureParams, eps: f64, kappa: f64, sources: SourceMode) -> Result<Self> {
        if !(eps >= 0.0) || !(kappa > 0.0) {
            return Err(Error::InvalidParams("multi-velocity system needs eps ≥ 0 and kappa > 0".into()));
        }
        let relax_params = params.with_model(Model::Bbgsp).with_scales(if eps > 0.0 { eps } else { 1.0 }, kappa);
        Ok(Self { params, eps, kappa, sources, relax_params })
    }

    /// Largest exchange rate max_s Σ_{k≠s} λ_sk n_k / κ; stiffness indicator.
    pub fn exchange_rate(&self, c: &Fields) -> f64 {
        let l = self.params.species();
        let mut r = 0.0f64;
        for i in 0..c[0].len() {
            for s in 0..l {
                let v: f64 = (0..l).filter(|k| *k != s).map(|k| self.params.lam(s, k) * c[k][i]).sum();
                r = r.max(v / self.kappa);
            }
        }
        r
    }
}

impl ConservationSystem for MultiSystem {
    fn nvars(&self) -> usize {
        3 * self.params.species()
    }

    fn flux(&self, c: &Fields, grad: &dyn Fn(&[f64]) -> Vec<f64>) -> Result<Fields> {
        let p = &self.params;
        let l = p.species();
        let st = NsMultiState::from_conservative(c, p)?;
        let nx = c[0].len();
        let mut f: Fields = vec![vec![0.0; nx]; 3 * l];
        for s in 0..l {
            for i in 0..nx {
                let pr = st.n[s][i] * p.k_gas * st.t[s][i];
                let u = st.u[s][i];
                f[s][i] = st.n[s][i] * u;
                f[l + s][i] = c[l + s][i] * u + pr;
                f[2 * l + s][i] = (c[2 * l + s][i] + pr) * u;
            }
        }
        if self.eps == 0.0 {
            return Ok(f);
        }
        let du: Vec<Vec<f64>> = st.u.iter().map(|r| grad(r)).collect();
        let dt: Vec<Vec<f64>> = st.t.iter().map(|r| grad(r)).collect();
        for i in 0..nx {
            let (ps, qs) = species_fluxes(
                &NsMultiState::point(&st.n, i),
                &NsMultiState::point(&st.u, i),
                &NsMultiState::point(&st.t, i),
                &NsMultiState::point(&du, i),
                &NsMultiState::point(&dt, i),
                p,
            );
            for s in 0..l {
                f[l + s][i] += self.eps * ps[s];
                f[2 * l + s][i] += self.eps * (ps[s] * st.u[s][i] + qs[s]);
            }
        }
        Ok(f)
    }

    fn source(&self, c: &Fields) -> Result<Option<Fields>> {
        if self.sources == SourceMode::Implicit {
            return Ok(None);
        }
        let p = &self.params;
        let l = p.species();
        let st = NsMultiState::from_conservative(c, p)?;
        let nx = c[0].len();
        let mut out: Fields = vec![vec![0.0; nx]; 3 * l];
        for i in 0..nx {
            let (r, e) = exchange_terms(
                &NsMultiState::point(&st.n, i),
                &NsMultiState::point(&st.u, i),
                &NsMultiState::point(&st.t, i),
                p,
                self.kappa,
            );
            for s in 0..l {
                out[l + s][i] = r[s];
                out[2 * l + s][i] = e[s];
            }
        }
        Ok(Some(out))
    }

    fn implicit_source(&self, c: &mut Fields, dt: f64) -> Result<()> {
        if self.sources == SourceMode::Explicit {
            return Ok(());
        }
        let p = &self.params;
        let l = p.species();
        let st = NsMultiState::from_conservative(c, p)?;
        for i in 0..c[0].len() {
            let n = NsMultiState::point(&st.n, i);
            let (u, t) = moment_solve(&n, &NsMultiState::point(&st.u, i), &NsMultiState::point(&st.t, i), dt, &self.relax_params)?;
            for s in 0..l {
                let m = p.masses[s];
                c[l + s][i] = m * n[s] * u[s];
                c[2 * l + s][i] = 0.5 * m * n[s] * u[s] * u[s] + 1.5 * n[s] * p.k_gas * t[s];
            }
        }
        Ok(())
    }

    fn max_speed(&self, c: &Fields) -> Result<f64> {
        let st = NsMultiState::from_conservative(c, &self.params)?;
        let mut v = 0.0f64;
        for s in 0..self.params.species() {
            let m = self.params.masses[s];
            for i in 0..c[0].len() {
                v = v.max(st.u[s][i].abs() + (5.0 / 3.0 * self.params.k_gas * st.t[s][i] / m).sqrt());
            }
        }
        Ok(v)
    }

    fn max_diffusivity(&self, c: &Fields) -> Result<f64> {
        if self.eps == 0.0 {
            return Ok(0.0);
        }
        let st = NsMultiState::from_conservative(c, &self.params)?;
        let mut d = 0.0f64;
        for s in 0..self.params.species() {
            let m = self.params.masses[s];
            for i in 0..c[0].len() {
                let nu = self.params.lam(s, s) * st.n[s][i];
                d = d.max(5.0 / 3.0 * self.params.k_gas * st.t[s][i] / (m * nu));
            }
        }
        Ok(self.eps * d)
    }

    fn pressure(&self, c: &Fields) -> Result<Vec<f64>> {
        let l = self.params.species();
        Ok((0..c[0].len())
            .map(|i| {
                (0..l)
                    .map(|s| {
                        let kin = 0.5 * c[l + s][i] * c[l + s][i] / (self.params.masses[s] * c[s][i]);
                        (c[2 * l + s][i] - kin) * 2.0 / 3.0
                    })
                    .sum()
            })
            .collect())
    }
}

/// Primitive right-hand side (∂_t n_s, ∂_t u_s, ∂_t T_s) on a periodic grid
/// with explicit sources.
#[allow(clippy::type_complexity)]
pub fn rhs_primitive(state: &NsMultiState, sys: &MultiSystem, diff: &SpectralDiff) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    let p = &sys.params;
    let l = p.species();
    let kg = p.k_gas;
    let nx = state.n[0].len();
    let d = |a: &[f64]| diff.d1(a);
    let du: Vec<Vec<f64>> = state.u.iter().map(|r| d(r)).collect();
    let dtemp: Vec<Vec<f64>> = state.t.iter().map(|r| d(r)).collect();
    let mut ps = vec![vec![0.0; nx]; l];
    let mut qs = vec![vec![0.0; nx]; l];
    let mut rs = vec![vec![0.0; nx]; l];
    let mut es = vec![vec![0.0; nx]; l];
    for i in 0..nx {
        let n = NsMultiState::point(&state.n, i);
        let u = NsMultiState::point(&state.u, i);
        let t = NsMultiState::point(&state.t, i);
        let (pp, qq) = species_fluxes(&n, &u, &t, &NsMultiState::point(&du, i), &NsMultiState::point(&dtemp, i), p);
        let (r, e) = exchange_terms(&n, &u, &t, p, sys.kappa);
        for s in 0..l {
            ps[s][i] = pp[s];
            qs[s][i] = qq[s];
            rs[s][i] = r[s];
            es[s][i] = e[s];
        }
    }
    let mut dn = Vec::with_capacity(l);
    let mut dv = Vec::with_capacity(l);
    let mut dtt = Vec::with_capacity(l);
    for s in 0..l {
        let m = p.masses[s];
        let flux: Vec<f64> = (0..nx).map(|i| state.n[s][i] * state.u[s][i]).collect();
        let press: Vec<f64> = (0..nx).map(|i| state.n[s][i] * kg * state.t[s][i]).collect();
        let dflux = d(&flux);
        let dpress = d(&press);
        let dps = d(&ps[s]);
        let dqs = d(&qs[s]);
        let mut a = vec![0.0; nx];
        let mut b = vec![0.0; nx];
        for i in 0..nx {
            let (n, u, t) = (state.n[s][i], state.u[s][i], state.t[s][i]);
            let rho = m * n;
            a[i] = -u * du[s][i] - (dpress[i] + sys.eps * dps[i] - rs[s][i]) / rho;
            b[i] = -u * dtemp[s][i]
                - (n * kg * t * du[s][i] + sys.eps * ps[s][i] * du[s][i] + sys.eps * dqs[i] - es[s][i] + u * rs[s][i]) / (1.5 * n * kg);
        }
        dn.push(dflux.iter().map(|v| -v).collect());
        dv.push(a);
        dtt.push(b);
    }
    Ok((dn, dv, dtt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::UnitSystem;
    use std::f64::consts::PI;

    fn ne_ar() -> MixtureParams {
        MixtureParams::new(
            vec![20.0, 40.0],
            vec![vec![12.46, 15.22], vec![15.22, 17.52]],
            UnitSystem::Abstract,
            Model::Bbgsp,
            1.0,
            1.0,
        )
        .unwrap()
    }

    fn three_gas() -> MixtureParams {
        MixtureParams::new(
            vec![1.0, 3.0, 7.0],
            vec![vec![2.0, 1.0, 0.5], vec![1.0, 3.0, 2.0], vec![0.5, 2.0, 1.5]],
            UnitSystem::Abstract,
            Model::Bbgsp,
            1.0,
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn exchange_is_conservative_and_vanishes_at_equilibrium() {
        let p = three_gas();
        let n = [0.4, 1.1, 0.3];
        let (r, e) = exchange_terms(&n, &[0.2, -0.5, 1.0], &[1.0, 2.0, 0.7], &p, 0.3);
        assert!(r.iter().sum::<f64>().abs() < 1e-13);
        assert!(e.iter().sum::<f64>().abs() < 1e-13);
        let (r, e) = exchange_terms(&n, &[0.3; 3], &[1.2; 3], &p, 0.3);
        assert!(r.iter().chain(&e).all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn stress_and_heat_flux_examples() {
        let p = ne_ar();
        // common velocity and temperature: only the gradient terms survive
        let (ps, qs) = species_fluxes(&[0.1, 0.9], &[0.5, 0.5], &[2.0, 2.0], &[1.0, 0.0], &[0.0, 3.0], &p);
        assert!((ps[0] + 4.0 / 3.0 * 2.0 / 12.46).abs() < 1e-14);
        assert_eq!(ps[1], 0.0);
        assert_eq!(qs[0], 0.0);
        assert!((qs[1] + 2.5 * 2.0 * 3.0 / (40.0 * 17.52)).abs() < 1e-14);

        // pure drift, no gradients
        let (ps, qs) = species_fluxes(&[1.0, 1.0], &[0.0, 1.0], &[1.0, 1.0], &[0.0; 2], &[0.0; 2], &p);
        let a = 40.0 / 60.0;
        assert!((ps[0] - 2.0 / 3.0 * 15.22 * a * a * 20.0 / 12.46).abs() < 1e-12);
        let third = 15.22 * a * a * (5.0 * a - a) / 3.0 * 20.0 / 12.46;
        assert!((qs[0] - third).abs() < 1e-12);
    }

    #[test]
    fn implicit_source_conserves_and_agrees_with_explicit_for_small_steps() {
        let p = three_gas();
        let st = NsMultiState {
            n: vec![vec![0.4], vec![1.1], vec![0.3]],
            u: vec![vec![0.2], vec![-0.5], vec![1.0]],
            t: vec![vec![1.0], vec![2.0], vec![0.7]],
        };
        let c0 = st.to_conservative(&p);
        let sys = MultiSystem::new(p.clone(), 1.0, 0.5, SourceMode::Implicit).unwrap();
        let dt = 1e-6;
        let mut c = c0.clone();
        sys.implicit_source(&mut c, dt).unwrap();
        let mom = |c: &Fields| (3..6).map(|v| c[v][0]).sum::<f64>();
        let en = |c: &Fields| (6..9).map(|v| c[v][0]).sum::<f64>();
        assert!((mom(&c) - mom(&c0)).abs() < 1e-14);
        assert!((en(&c) - en(&c0)).abs() < 1e-13);
        let expl = MultiSystem::new(p.clone(), 1.0, 0.5, SourceMode::Explicit).unwrap();
        let s = expl.source(&c0).unwrap().unwrap();
        for v in 3..9 {
            let rate = (c[v][0] - c0[v][0]) / dt;
            assert!((rate - s[v][0]).abs() < 1e-4 * (1.0 + s[v][0].abs()), "{v}: {rate} {}", s[v][0]);
        }
        // large steps drive the species to a common velocity and temperature
        let mut c = c0.clone();
        sys.implicit_source(&mut c, 1e8).unwrap();
        let eq = NsMultiState::from_conservative(&c, &p).unwrap();
        assert!((eq.u[0][0] - eq.u[2][0]).abs() < 1e-6);
        assert!((eq.t[0][0] - eq.t[1][0]).abs() < 1e-6);
    }

    #[test]
    fn primitive_rhs_matches_conservative_form() {
        let p = ne_ar();
        let nx = 64;
        let diff = SpectralDiff::new(nx, 2.0).unwrap();
        let x: Vec<f64> = (0..nx).map(|i| -1.0 + 2.0 * i as f64 / nx as f64).collect();
        let st = NsMultiState {
            n: vec![x.iter().map(|x| 0.1 + 0.02 * (PI * x).sin()).collect(), x.iter().map(|x| 0.9 + 0.1 * (PI * x).cos()).collect()],
            u: vec![x.iter().map(|x| 0.3 * (PI * x).sin()).collect(), x.iter().map(|x| -0.2 + 0.1 * (PI * x).cos()).collect()],
            t: vec![x.iter().map(|x| 2.0 + 0.3 * (PI * x).cos()).collect(), x.iter().map(|x| 2.5 + 0.2 * (PI * x).sin()).collect()],
        };
        for eps in [0.0, 0.05] {
            let sys = MultiSystem::new(p.clone(), eps, 0.7, SourceMode::Explicit).unwrap();
            let (dn, du, dt) = rhs_primitive(&st, &sys, &diff).unwrap();
            let c = st.to_conservative(&p);
            let f = sys.flux(&c, &|a: &[f64]| diff.d1(a)).unwrap();
            let src = sys.source(&c).unwrap().unwrap();
            let dc: Vec<Vec<f64>> = f.iter().zip(&src).map(|(row, s)| diff.d1(row).iter().zip(s).map(|(d, s)| s - d).collect()).collect();
            for s in 0..2 {
                let m = p.masses[s];
                for i in 0..nx {
                    let (n, u, t) = (st.n[s][i], st.u[s][i], st.t[s][i]);
                    let dn_c = dc[s][i];
                    let du_c = (dc[2 + s][i] - m * u * dn_c) / (m * n);
                    let dt_c = (dc[4 + s][i] - m * n * u * du_c - 0.5 * m * u * u * dn_c - 1.5 * t * dn_c) / (1.5 * n);
                    assert!((dn[s][i] - dn_c).abs() < 1e-10);
                    assert!((du[s][i] - du_c).abs() < 1e-9, "{eps} {s} {i}: {} {du_c}", du[s][i]);
                    assert!((dt[s][i] - dt_c).abs() < 1e-9, "{eps} {s} {i}: {} {dt_c}", dt[s][i]);
                }
            }
        }
    }

    #[test]
    fn uniform_equilibrium_is_stationary() {
        let p = three_gas();
        let nx = 8;
        let st = NsMultiState { n: vec![vec![0.5; nx], vec![0.2; nx], vec![0.9; nx]], u: vec![vec![0.4; nx]; 3], t: vec![vec![1.3; nx]; 3] };
        let diff = SpectralDiff::new(nx, 1.0).unwrap();
        let sys = MultiSystem::new(p, 0.1, 0.1, SourceMode::Explicit).unwrap();
        let (dn, du, dt) = rhs_primitive(&st, &sys, &diff).unwrap();
        assert!(dn.iter().chain(&du).chain(&dt).flatten().all(|v| v.abs() < 1e-13));
    }
}
