//! Navier–Stokes system with one velocity and one temperature for the
//! mixture and Fick-type diffusion velocities.
//!
//! Conservative variables: n_1 … n_L, ρu, E = ½ρu² + (3/2) n K T.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rk4::Fields;
use super::spectral::SpectralDiff;
use super::ConservationSystem;
use crate::closures::collision_frequencies;
use crate::error::{Error, Result};
use crate::linalg::solve_matrix;
use crate::params::{MixtureParams, Model};

/// Which friction matrix enters the Fick law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FickVariant {
    /// Bi-species frequencies only (AAP and BBGSP).
    AapBbgsp,
    /// Total frequencies ν_s (GS).
    Gs,
}

impl FickVariant {
    pub fn for_model(model: Model) -> Self {
        match model {
            Model::Gs => FickVariant::Gs,
            _ => FickVariant::AapBbgsp,
        }
    }
}

/// Friction matrix 𝖬 (row-major) acting on species momenta.
pub fn friction_matrix(variant: FickVariant, n: &[f64], params: &MixtureParams) -> Vec<f64> {
    let l = params.species();
    let m = &params.masses;
    let rho: Vec<f64> = (0..l).map(|s| m[s] * n[s]).collect();
    let mut mm = vec![0.0; l * l];
    match variant {
        FickVariant::AapBbgsp => {
            for s in 0..l {
                let mut diag = 0.0;
                for k in 0..l {
                    mm[s * l + k] = params.lam(s, k) * rho[s] / (m[s] + m[k]);
                    diag += params.lam(s, k) * rho[k] / (m[s] + m[k]);
                }
                mm[s * l + s] -= diag;
            }
        }
        FickVariant::Gs => {
            let (nu, _) = collision_frequencies(n, params);
            let den: f64 = (0..l).map(|r| rho[r] * nu[r]).sum();
            for s in 0..l {
                for k in 0..l {
                    mm[s * l + k] = nu[s] * nu[k] * rho[s] / den;
                }
                mm[s * l + s] -= nu[s];
            }
        }
    }
    mm
}

/// Ω_sk = ρ_s δ_sk − ρ_s ρ_k / ρ.
pub fn omega(rho: &[f64]) -> Vec<f64> {
    let l = rho.len();
    let total: f64 = rho.iter().sum();
    let mut o = vec![0.0; l * l];
    for s in 0..l {
        for k in 0..l {
            o[s * l + k] = -rho[s] * rho[k] / total;
        }
        o[s * l + s] += rho[s];
    }
    o
}

/// L = 𝖬̃⁻¹ Ω with 𝖬̃ = 𝖬 − κ/2, κ the smallest off-diagonal entry of 𝖬.
pub fn fick_matrix(variant: FickVariant, n: &[f64], params: &MixtureParams) -> Result<Vec<f64>> {
    let l = params.species();
    if l == 1 {
        return Ok(vec![0.0]);
    }
    let mut mm = friction_matrix(variant, n, params);
    let mut kappa = f64::INFINITY;
    for s in 0..l {
        for k in 0..l {
            if s != k {
                kappa = kappa.min(mm[s * l + k]);
            }
        }
    }
    mm.iter_mut().for_each(|v| *v -= 0.5 * kappa);
    let rho: Vec<f64> = (0..l).map(|s| params.masses[s] * n[s]).collect();
    solve_matrix(&mm, &omega(&rho), l)
}

/// u_s⁽¹⁾ = Σ_k L_sk / (ρ_s ρ_k) ∂_x(n_k K T).
pub fn diffusion_velocities(lf: &[f64], rho: &[f64], grad_p: &[f64]) -> Vec<f64> {
    let l = rho.len();
    (0..l).map(|s| (0..l).map(|k| lf[s * l + k] / (rho[s] * rho[k]) * grad_p[k]).sum()).collect()
}

/// Viscosity μ = Σ_s n_s K T / ν_s and conductivity
/// λ = (5/2) K² T Σ_s n_s / (m_s ν_s), with ν_s = Σ_k λ_sk n_k.
pub fn transport_coeffs(n: &[f64], t: f64, params: &MixtureParams) -> (f64, f64) {
    let (nu, _) = collision_frequencies(n, params);
    let k = params.k_gas;
    let mut mu = 0.0;
    let mut lam = 0.0;
    for s in 0..n.len() {
        if n[s] > 0.0 {
            mu += n[s] * k * t / nu[s];
            lam += n[s] / (params.masses[s] * nu[s]);
        }
    }
    (mu, 2.5 * k * k * t * lam)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NsGlobalState {
    pub n: Vec<Vec<f64>>,
    pub u: Vec<f64>,
    pub t: Vec<f64>,
}

impl NsGlobalState {
    pub fn to_conservative(&self, params: &MixtureParams) -> Fields {
        let l = self.n.len();
        let nx = self.u.len();
        let mut out: Fields = self.n.clone();
        let mut mom = vec![0.0; nx];
        let mut en = vec![0.0; nx];
        for i in 0..nx {
            let rho: f64 = (0..l).map(|s| params.masses[s] * self.n[s][i]).sum();
            let nt: f64 = (0..l).map(|s| self.n[s][i]).sum();
            mom[i] = rho * self.u[i];
            en[i] = 0.5 * rho * self.u[i] * self.u[i] + 1.5 * nt * params.k_gas * self.t[i];
        }
        out.push(mom);
        out.push(en);
        out
    }

    pub fn from_conservative(u: &Fields, params: &MixtureParams) -> Result<Self> {
        let l = params.species();
        let nx = u[0].len();
        let mut vel = vec![0.0; nx];
        let mut t = vec![0.0; nx];
        for i in 0..nx {
            let rho: f64 = (0..l).map(|s| params.masses[s] * u[s][i]).sum();
            let nt: f64 = (0..l).map(|s| u[s][i]).sum();
            if !(rho > 0.0) {
                return Err(Error::NonPositive { what: "density", value: rho, cell: i });
            }
            vel[i] = u[l][i] / rho;
            t[i] = (u[l + 1][i] - 0.5 * rho * vel[i] * vel[i]) / (1.5 * nt * params.k_gas);
            if !(t[i] > 0.0) {
                return Err(Error::NonPositive { what: "temperature", value: t[i], cell: i });
            }
        }
        Ok(Self { n: u[..l].to_vec(), u: vel, t })
    }
}

/// The global NS system at scale ε (ε = 0 gives the Euler equations).
#[derive(Debug, Clone)]
pub struct GlobalSystem {
    pub params: MixtureParams,
    pub variant: FickVariant,
    pub eps: f64,
}

impl GlobalSystem {
    pub fn new(params: MixtureParams, variant: FickVariant, eps: f64) -> Self {
        Self { params, variant, eps }
    }

    fn point(&self, ns: &[Vec<f64>], i: usize) -> Vec<f64> {
        ns.iter().map(|row| row[i]).collect()
    }
}

impl ConservationSystem for GlobalSystem {
    fn nvars(&self) -> usize {
        self.params.species() + 2
    }

    fn flux(&self, u: &Fields, grad: &dyn Fn(&[f64]) -> Vec<f64>) -> Result<Fields> {
        let p = &self.params;
        let l = p.species();
        let k = p.k_gas;
        let st = NsGlobalState::from_conservative(u, p)?;
        let nx = st.u.len();
        let mut flux: Fields = vec![vec![0.0; nx]; l + 2];
        let ntot: Vec<f64> = (0..nx).map(|i| (0..l).map(|s| st.n[s][i]).sum()).collect();
        for i in 0..nx {
            let pr = ntot[i] * k * st.t[i];
            for s in 0..l {
                flux[s][i] = st.n[s][i] * st.u[i];
            }
            flux[l][i] = u[l][i] * st.u[i] + pr;
            flux[l + 1][i] = (u[l + 1][i] + pr) * st.u[i];
        }
        if self.eps == 0.0 {
            return Ok(flux);
        }
        let du = grad(&st.u);
        let dt = grad(&st.t);
        let dp: Vec<Vec<f64>> = (0..l).map(|s| grad(&st.n[s].iter().zip(&st.t).map(|(n, t)| n * k * t).collect::<Vec<_>>())).collect();
        let visc: Vec<[f64; 2]> = (0..nx)
            .into_par_iter()
            .map(|i| {
                let n = self.point(&st.n, i);
                let rho: Vec<f64> = (0..l).map(|s| p.masses[s] * n[s]).collect();
                let lf = fick_matrix(self.variant, &n, p)?;
                let gp: Vec<f64> = (0..l).map(|s| dp[s][i]).collect();
                let us1 = diffusion_velocities(&lf, &rho, &gp);
                let (mu, lam) = transport_coeffs(&n, st.t[i], p);
                let pv = -4.0 / 3.0 * mu * du[i];
                let q = 2.5 * k * st.t[i] * (0..l).map(|s| n[s] * us1[s]).sum::<f64>() - lam * dt[i];
                Ok((us1.iter().zip(&n).map(|(a, b)| a * b).collect::<Vec<f64>>(), [pv, q]))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .enumerate()
            .map(|(i, (nus, pq))| {
                for s in 0..l {
                    flux[s][i] += self.eps * nus[s];
                }
                pq
            })
            .collect();
        for i in 0..nx {
            let [pv, q] = visc[i];
            flux[l][i] += self.eps * pv;
            flux[l + 1][i] += self.eps * (pv * st.u[i] + q);
        }
        Ok(flux)
    }

    fn max_speed(&self, u: &Fields) -> Result<f64> {
        let p = &self.params;
        let l = p.species();
        let st = NsGlobalState::from_conservative(u, p)?;
        let mut s = 0.0f64;
        for i in 0..st.u.len() {
            let rho: f64 = (0..l).map(|k| p.masses[k] * st.n[k][i]).sum();
            let nt: f64 = (0..l).map(|k| st.n[k][i]).sum();
            let c = (5.0 / 3.0 * nt * p.k_gas * st.t[i] / rho).sqrt();
            s = s.max(st.u[i].abs() + c);
        }
        Ok(s)
    }

    fn max_diffusivity(&self, u: &Fields) -> Result<f64> {
        if self.eps == 0.0 {
            return Ok(0.0);
        }
        let p = &self.params;
        let l = p.species();
        let k = p.k_gas;
        let st = NsGlobalState::from_conservative(u, p)?;
        let mut d = 0.0f64;
        for i in 0..st.u.len() {
            let n: Vec<f64> = (0..l).map(|s| st.n[s][i]).collect();
            let rho: Vec<f64> = (0..l).map(|s| p.masses[s] * n[s]).collect();
            let rt: f64 = rho.iter().sum();
            let nt: f64 = n.iter().sum();
            let (mu, lam) = transport_coeffs(&n, st.t[i], p);
            d = d.max(4.0 / 3.0 * mu / rt).max(2.0 * lam / (3.0 * nt * k));
            let lf = fick_matrix(self.variant, &n, p)?;
            for s in 0..l {
                let row: f64 = (0..l).map(|q| (lf[s * l + q] * k * st.t[i] / (p.masses[s] * rho[q])).abs()).sum();
                d = d.max(row);
            }
        }
        Ok(self.eps * d)
    }

    fn pressure(&self, u: &Fields) -> Result<Vec<f64>> {
        let p = &self.params;
        let l = p.species();
        let nx = u[0].len();
        Ok((0..nx)
            .map(|i| {
                let rho: f64 = (0..l).map(|s| p.masses[s] * u[s][i]).sum();
                (u[l + 1][i] - 0.5 * u[l][i] * u[l][i] / rho) * 2.0 / 3.0
            })
            .collect())
    }
}

/// Primitive-variable right-hand side (∂_t n_s, ∂_t u, ∂_t T) on a periodic
/// grid, in the rewritten form of the system.
pub fn rhs_primitive(state: &NsGlobalState, sys: &GlobalSystem, diff: &SpectralDiff) -> Result<(Vec<Vec<f64>>, Vec<f64>, Vec<f64>)> {
    let p = &sys.params;
    let l = p.species();
    let k = p.k_gas;
    let eps = sys.eps;
    let nx = state.u.len();
    let d = |a: &[f64]| diff.d1(a);
    let rho: Vec<f64> = (0..nx).map(|i| (0..l).map(|s| p.masses[s] * state.n[s][i]).sum()).collect();
    let nt: Vec<f64> = (0..nx).map(|i| (0..l).map(|s| state.n[s][i]).sum()).collect();
    let press: Vec<f64> = (0..nx).map(|i| nt[i] * k * state.t[i]).collect();
    let du = d(&state.u);
    let dtemp = d(&state.t);
    let dpress = d(&press);
    let dp: Vec<Vec<f64>> = (0..l).map(|s| d(&(0..nx).map(|i| state.n[s][i] * k * state.t[i]).collect::<Vec<_>>())).collect();

    let mut nus = vec![vec![0.0; nx]; l];
    let mut rhous = vec![0.0; nx];
    let mut nsum = vec![0.0; nx];
    let mut pv = vec![0.0; nx];
    let mut pvu = vec![0.0; nx];
    let mut q = vec![0.0; nx];
    for i in 0..nx {
        let n: Vec<f64> = (0..l).map(|s| state.n[s][i]).collect();
        let r: Vec<f64> = (0..l).map(|s| p.masses[s] * n[s]).collect();
        let (mu, lam) = transport_coeffs(&n, state.t[i], p);
        let us1 = if eps > 0.0 {
            let lf = fick_matrix(sys.variant, &n, p)?;
            diffusion_velocities(&lf, &r, &(0..l).map(|s| dp[s][i]).collect::<Vec<_>>())
        } else {
            vec![0.0; l]
        };
        for s in 0..l {
            nus[s][i] = n[s] * us1[s];
            rhous[i] += r[s] * us1[s];
            nsum[i] += n[s] * us1[s];
        }
        pv[i] = -4.0 / 3.0 * mu * du[i];
        pvu[i] = pv[i] * state.u[i];
        q[i] = 2.5 * k * state.t[i] * nsum[i] - lam * dtemp[i];
    }
    let drhous = d(&rhous);
    let dnsum = d(&nsum);
    let dpv = d(&pv);
    let dpvu = d(&pvu);
    let dq = d(&q);
    let mut dn = Vec::with_capacity(l);
    for s in 0..l {
        let flux: Vec<f64> = (0..nx).map(|i| state.n[s][i] * state.u[i]).collect();
        let a = d(&flux);
        let b = d(&nus[s]);
        dn.push((0..nx).map(|i| -a[i] - eps * b[i]).collect());
    }
    let mut dvel = vec![0.0; nx];
    let mut dtt = vec![0.0; nx];
    for i in 0..nx {
        let u = state.u[i];
        let t = state.t[i];
        dvel[i] = u / rho[i] * eps * drhous[i] - u * du[i] - dpress[i] / rho[i] - eps * dpv[i] / rho[i];
        dtt[i] = -u * u / (3.0 * nt[i] * k) * eps * drhous[i] + 2.0 * u / (3.0 * nt[i] * k) * eps * dpv[i]
            + t / nt[i] * eps * dnsum[i]
            - dtemp[i] * u
            - 2.0 / 3.0 * t * du[i]
            - 2.0 / (3.0 * nt[i] * k) * eps * dpvu[i]
            - 2.0 / (3.0 * nt[i] * k) * eps * dq[i];
    }
    Ok((dn, dvel, dtt))
}
