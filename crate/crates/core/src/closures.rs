//! Collision frequencies, auxiliary Maxwellian parameters and the attractors
//! of the three relaxation models.
//!
//! Every function here works on one spatial cell: `n`, `u`, `t` hold the
//! species values at that cell.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{MixtureParams, Model};
use crate::state::fill_maxwellian_conservative;
use crate::grid::VelocityGrid;

/// Per-species ν_s = Σ_k λ_sk n_k and per-pair ν_sk = λ_sk n_k (row-major).
pub fn collision_frequencies(n: &[f64], params: &MixtureParams) -> (Vec<f64>, Vec<f64>) {
    let l = params.species();
    let mut nu_sk = vec![0.0; l * l];
    let mut nu_s = vec![0.0; l];
    for s in 0..l {
        let mut acc = 0.0;
        for k in 0..l {
            let v = params.lam(s, k) * n[k];
            nu_sk[s * l + k] = v;
            acc += v;
        }
        nu_s[s] = acc;
    }
    (nu_s, nu_sk)
}

/// Matrices ξ_sk and γ^sk of the AAP closure, row-major.
pub fn aap_xi_gamma(n: &[f64], params: &MixtureParams) -> (Vec<f64>, Vec<f64>) {
    let l = params.species();
    let m = &params.masses;
    let k_b = params.k_gas;
    let mut xi = vec![0.0; l * l];
    let mut ga = vec![0.0; l * l];
    for s in 0..l {
        let mut xs = 0.0;
        let mut gs = 0.0;
        for k in 0..l {
            let ms = m[s] + m[k];
            let base = params.lam(s, k) * m[s] * m[k] * n[s] * n[k];
            let x = base / ms;
            let g = 3.0 * k_b * base / (ms * ms);
            xi[s * l + k] = x;
            ga[s * l + k] = g;
            xs += x;
            gs += g;
        }
        xi[s * l + s] -= xs;
        ga[s * l + s] -= gs;
    }
    (xi, ga)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AapAux {
    pub u: Vec<f64>,
    pub t: Vec<f64>,
}

/// Unchecked AAP auxiliary velocities and temperatures.
pub fn aap_aux_raw(n: &[f64], u: &[f64], t: &[f64], nu_s: &[f64], params: &MixtureParams) -> AapAux {
    let l = params.species();
    let m = &params.masses;
    let k_b = params.k_gas;
    let (xi, ga) = aap_xi_gamma(n, params);
    let mut us = vec![0.0; l];
    let mut ts = vec![0.0; l];
    for s in 0..l {
        let den = m[s] * n[s] * nu_s[s];
        let mut acc = 0.0;
        for k in 0..l {
            acc += xi[s * l + k] * u[k];
        }
        us[s] = u[s] + acc / den;

        let c = 2.0 / (3.0 * n[s] * k_b * nu_s[s]);
        let mut tg = 0.0;
        let mut tu = 0.0;
        for k in 0..l {
            tg += ga[s * l + k] * t[k];
            let ms = m[s] + m[k];
            let w = params.lam(s, k) * m[s] * m[k] * n[s] * n[k] / (ms * ms);
            tu += w * (m[s] * u[s] + m[k] * u[k]) * (u[k] - u[s]);
        }
        ts[s] = t[s] - m[s] / (3.0 * k_b) * (us[s] * us[s] - u[s] * u[s]) + c * tg + c * tu;
    }
    AapAux { u: us, t: ts }
}

pub fn aap_aux(n: &[f64], u: &[f64], t: &[f64], params: &MixtureParams) -> Result<AapAux> {
    let (nu_s, _) = collision_frequencies(n, params);
    if let Some(s) = nu_s.iter().position(|v| !(*v > 0.0)) {
        return Err(Error::NonPositive { what: "collision frequency", value: nu_s[s], cell: s });
    }
    let aux = aap_aux_raw(n, u, t, &nu_s, params);
    for (s, &ts) in aux.t.iter().enumerate() {
        if !(ts > 0.0) {
            return Err(Error::InadmissibleTemperature { species: s, value: ts });
        }
    }
    Ok(aux)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GsAux {
    pub u: f64,
    pub t: f64,
}

pub fn gs_aux_raw(n: &[f64], u: &[f64], t: &[f64], nu_s: &[f64], params: &MixtureParams) -> GsAux {
    let m = &params.masses;
    let k_b = params.k_gas;
    let mut num = 0.0;
    let mut den = 0.0;
    for s in 0..n.len() {
        let w = nu_s[s] * m[s] * n[s];
        num += w * u[s];
        den += w;
    }
    let ub = num / den;
    let mut e = 0.0;
    let mut d = 0.0;
    for s in 0..n.len() {
        e += nu_s[s] * n[s] * (m[s] * (u[s] * u[s] - ub * ub) + 3.0 * k_b * t[s]);
        d += nu_s[s] * n[s];
    }
    GsAux { u: ub, t: e / (3.0 * k_b * d) }
}

pub fn gs_aux(n: &[f64], u: &[f64], t: &[f64], nu_s: &[f64], params: &MixtureParams) -> Result<GsAux> {
    let d: f64 = nu_s.iter().zip(n).map(|(a, b)| a * b).sum();
    if !(d > 0.0) {
        return Err(Error::NonPositive { what: "Σ ν_s n_s", value: d, cell: 0 });
    }
    let aux = gs_aux_raw(n, u, t, nu_s, params);
    if !(aux.t > 0.0) {
        return Err(Error::InadmissibleTemperature { species: 0, value: aux.t });
    }
    Ok(aux)
}

/// Pair coefficients (a_sk, b_sk, γ_sk) under ν_sk = λ_sk n_k.
#[inline]
pub fn bbgsp_coefficients(ms: f64, mk: f64) -> (f64, f64, f64) {
    let sum = ms + mk;
    let a = mk / sum;
    let b = 2.0 * a * ms / sum;
    let g = ms * a / 3.0 * (2.0 * mk / sum - a);
    (a, b, g)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BbgspAux {
    pub u: Vec<f64>,
    pub t: Vec<f64>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub gamma: Vec<f64>,
}

pub fn bbgsp_aux_raw(u: &[f64], t: &[f64], params: &MixtureParams) -> BbgspAux {
    let l = params.species();
    let m = &params.masses;
    let mut out = BbgspAux {
        u: vec![0.0; l * l],
        t: vec![0.0; l * l],
        a: vec![0.0; l * l],
        b: vec![0.0; l * l],
        gamma: vec![0.0; l * l],
    };
    for s in 0..l {
        for k in 0..l {
            let i = s * l + k;
            let (a, b, g) = bbgsp_coefficients(m[s], m[k]);
            out.a[i] = a;
            out.b[i] = b;
            out.gamma[i] = g;
            if s == k {
                out.u[i] = u[s];
                out.t[i] = t[s];
            } else {
                let du = u[s] - u[k];
                out.u[i] = (1.0 - a) * u[s] + a * u[k];
                out.t[i] = (1.0 - b) * t[s] + b * t[k] + g / params.k_gas * du * du;
            }
        }
    }
    out
}

pub fn bbgsp_aux(u: &[f64], t: &[f64], params: &MixtureParams) -> Result<BbgspAux> {
    if let Some(s) = t.iter().position(|v| !(*v > 0.0)) {
        return Err(Error::NonPositive { what: "temperature", value: t[s], cell: s });
    }
    let aux = bbgsp_aux_raw(u, t, params);
    if let Some(i) = aux.t.iter().position(|v| !(*v > 0.0)) {
        return Err(Error::InadmissibleTemperature { species: i / params.species(), value: aux.t[i] });
    }
    Ok(aux)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum AuxClosure {
    Aap(AapAux),
    Gs(GsAux),
    Bbgsp(BbgspAux),
}

/// Closure of one cell together with the collision frequencies it used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Closure {
    pub aux: AuxClosure,
    pub nu_s: Vec<f64>,
    pub nu_sk: Vec<f64>,
}

/// One relaxation term of species s: rate (already divided by ε or κ) and
/// the Maxwellian parameters it relaxes toward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttractorTerm {
    pub rate: f64,
    pub u: f64,
    pub t: f64,
}

impl Closure {
    /// Checked closure of the configured model.
    pub fn compute(n: &[f64], u: &[f64], t: &[f64], params: &MixtureParams) -> Result<Self> {
        let (nu_s, nu_sk) = collision_frequencies(n, params);
        let aux = match params.model {
            Model::Aap => AuxClosure::Aap(aap_aux(n, u, t, params)?),
            Model::Gs => AuxClosure::Gs(gs_aux(n, u, t, &nu_s, params)?),
            Model::Bbgsp => AuxClosure::Bbgsp(bbgsp_aux(u, t, params)?),
        };
        Ok(Self { aux, nu_s, nu_sk })
    }

    /// Closure without admissibility checks; used for the linear moment
    /// systems, which are probed at arbitrary (possibly unphysical) values.
    pub fn compute_raw(n: &[f64], u: &[f64], t: &[f64], params: &MixtureParams) -> Self {
        let (nu_s, nu_sk) = collision_frequencies(n, params);
        let aux = match params.model {
            Model::Aap => AuxClosure::Aap(aap_aux_raw(n, u, t, &nu_s, params)),
            Model::Gs => AuxClosure::Gs(gs_aux_raw(n, u, t, &nu_s, params)),
            Model::Bbgsp => AuxClosure::Bbgsp(bbgsp_aux_raw(u, t, params)),
        };
        Self { aux, nu_s, nu_sk }
    }

    /// Relaxation terms of species `s`, weighted by 1/ε (and 1/κ for the
    /// inter-species BBGSP terms).
    pub fn terms(&self, s: usize, params: &MixtureParams, out: &mut Vec<AttractorTerm>) {
        out.clear();
        let l = params.species();
        match &self.aux {
            AuxClosure::Aap(a) => out.push(AttractorTerm { rate: self.nu_s[s] / params.eps, u: a.u[s], t: a.t[s] }),
            AuxClosure::Gs(g) => out.push(AttractorTerm { rate: self.nu_s[s] / params.eps, u: g.u, t: g.t }),
            AuxClosure::Bbgsp(b) => {
                for k in 0..l {
                    let rate = self.nu_sk[s * l + k] * params.pair_weight(s, k);
                    if rate > 0.0 {
                        out.push(AttractorTerm { rate, u: b.u[s * l + k], t: b.t[s * l + k] });
                    }
                }
            }
        }
    }

    /// Total relaxation rate Λ_s of species `s`.
    pub fn total_rate(&self, s: usize, params: &MixtureParams) -> f64 {
        let mut v = Vec::new();
        self.terms(s, params, &mut v);
        v.iter().map(|t| t.rate).sum()
    }
}

/// Momentum and energy gained by each species from the relaxation operator,
/// m_s ∫(v, |v|²/2)·relax_s, evaluated exactly for the continuous Maxwellians.
pub fn relaxation_exchange(n: &[f64], u: &[f64], t: &[f64], params: &MixtureParams, closure: &Closure) -> (Vec<f64>, Vec<f64>) {
    let l = params.species();
    let m = &params.masses;
    let k_b = params.k_gas;
    let mut mom = vec![0.0; l];
    let mut en = vec![0.0; l];
    let mut terms = Vec::with_capacity(l);
    for s in 0..l {
        closure.terms(s, params, &mut terms);
        for term in &terms {
            mom[s] += term.rate * m[s] * n[s] * (term.u - u[s]);
            en[s] += term.rate * n[s] * (0.5 * m[s] * (term.u * term.u - u[s] * u[s]) + 1.5 * k_b * (term.t - t[s]));
        }
    }
    (mom, en)
}

/// Attractor of species `s` in one cell: `g1 = Σ rate · n_s M1(u*, K T*/m_s)`
/// with its `g2` partner, using discrete-conservative Maxwellians.
/// Returns the total rate Λ_s.
pub fn build_attractor(
    closure: &Closure,
    s: usize,
    n_s: f64,
    params: &MixtureParams,
    v: &VelocityGrid,
    g1: &mut [f64],
    g2: &mut [f64],
) -> f64 {
    let mut terms = Vec::with_capacity(params.species());
    closure.terms(s, params, &mut terms);
    build_attractor_from_terms(&terms, n_s, params.masses[s], params.k_gas, v, g1, g2)
}

pub fn build_attractor_from_terms(
    terms: &[AttractorTerm],
    n_s: f64,
    m: f64,
    k: f64,
    v: &VelocityGrid,
    g1: &mut [f64],
    g2: &mut [f64],
) -> f64 {
    g1.iter_mut().for_each(|x| *x = 0.0);
    g2.iter_mut().for_each(|x| *x = 0.0);
    let nvn = v.len();
    let mut h1 = vec![0.0; nvn];
    let mut h2 = vec![0.0; nvn];
    let mut total = 0.0;
    for term in terms {
        fill_maxwellian_conservative(&mut h1, &mut h2, n_s, term.u, term.t, m, k, v);
        for j in 0..nvn {
            g1[j] += term.rate * h1[j];
            g2[j] += term.rate * h2[j];
        }
        total += term.rate;
    }
    total
}

/// Momentum and energy transfer from species k to species s in the
/// multi-velocity limit: 𝓡_sk and 𝓢_sk.
#[inline]
pub fn pair_exchange(s: usize, k: usize, n: &[f64], u: &[f64], t: &[f64], params: &MixtureParams) -> (f64, f64) {
    let m = &params.masses;
    let msum = m[s] + m[k];
    let mred = m[s] * m[k] / msum;
    let pre = params.lam(s, k) * mred * n[s] * n[k];
    let du = u[k] - u[s];
    let r = pre * du;
    let e = pre / msum * ((m[s] * u[s] + m[k] * u[k]) * du + 3.0 * params.k_gas * (t[k] - t[s]));
    (r, e)
}

/// Collision constants of a binary noble-gas mixture from viscosities:
/// λ_ss = (4/3) T / μ_s and
/// λ_12 = (2√2/3) (m_1+m_2)^{1/4} / (m_1 m_2)^{1/2} · T / (μ_1 μ_2)^{1/2}.
pub fn noble_gas_frequencies(temperature: f64, m: [f64; 2], mu: [f64; 2]) -> Result<[[f64; 2]; 2]> {
    if !(temperature > 0.0) || !(mu[0] > 0.0 && mu[1] > 0.0) || !(m[0] > 0.0 && m[1] > 0.0) {
        return Err(Error::InvalidParams("temperature, masses and viscosities must be positive".into()));
    }
    let l11 = 4.0 / 3.0 * temperature / mu[0];
    let l22 = 4.0 / 3.0 * temperature / mu[1];
    let l12 = 2.0 * 2f64.sqrt() / 3.0 * (m[0] + m[1]).powf(0.25) / (m[0] * m[1]).sqrt() * temperature / (mu[0] * mu[1]).sqrt();
    Ok([[l11, l12], [l12, l22]])
}
