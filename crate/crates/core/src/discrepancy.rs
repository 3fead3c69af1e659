//! Leading-order discrepancy terms between the models and L¹ distances
//! between simulated states.
//!
//! AAP against BBGSP:
//!
//! ```text
//! E_u = Σ_k ν_sk (u^s − u_sk),   E_T = Σ_k ν_sk (T^s − T_sk)
//! ```
//!
//! AAP against GS:
//!
//! ```text
//! Ē_u = ν_s (u^s − ū),   Ē_T = ν_s (T^s − T̄)
//! ```
//!
//! Each term is available both from its definition (through the closures)
//! and from the closed forms, so the two can be checked against each other.
//! All frequencies are the unscaled ν_sk = λ_sk n_k.

use serde::{Deserialize, Serialize};

use crate::closures::{aap_aux_raw, bbgsp_aux_raw, collision_frequencies, gs_aux_raw};
use crate::error::{Error, Result};
use crate::grid::{SpatialGrid, VelocityGrid};
use crate::params::MixtureParams;
use crate::state::KineticState;

/// Per-species error terms, each from its definition and from its closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorTerms {
    pub e_u_def: Vec<f64>,
    pub e_u_closed: Vec<f64>,
    pub e_t_def: Vec<f64>,
    pub e_t_closed: Vec<f64>,
}

/// AAP against BBGSP.
pub fn aap_bbgsp_terms(n: &[f64], u: &[f64], t: &[f64], params: &MixtureParams) -> ErrorTerms {
    let l = params.species();
    let m = &params.masses;
    let k_b = params.k_gas;
    let (nu_s, nu_sk) = collision_frequencies(n, params);
    let aap = aap_aux_raw(n, u, t, &nu_s, params);
    let bb = bbgsp_aux_raw(u, t, params);

    let mut out = ErrorTerms {
        e_u_def: vec![0.0; l],
        e_u_closed: vec![0.0; l],
        e_t_def: vec![0.0; l],
        e_t_closed: vec![0.0; l],
    };
    for s in 0..l {
        let mut eu = 0.0;
        let mut et = 0.0;
        for k in 0..l {
            let w = nu_sk[s * l + k];
            eu += w * (aap.u[s] - bb.u[s * l + k]);
            et += w * (aap.t[s] - bb.t[s * l + k]);
        }
        out.e_u_def[s] = eu;
        out.e_t_def[s] = et;

        // Σ_r (λ m_r n_r/(m_s+m_r) − δ_sr Σ_ℓ …) u_r − Σ_k λ m_k n_k/(m_s+m_k) (u_k − u_s)
        let mut first = 0.0;
        let mut diag = 0.0;
        let mut second = 0.0;
        for r in 0..l {
            let c = params.lam(s, r) * m[r] * n[r] / (m[s] + m[r]);
            first += c * u[r];
            diag += c;
            second += c * (u[r] - u[s]);
        }
        out.e_u_closed[s] = (first - diag * u[s]) - second;

        let mut y = 0.0;
        let mut x = 0.0;
        for r in 0..l {
            let a = m[r] / (m[s] + m[r]);
            let du = u[r] - u[s];
            y += nu_sk[s * l + r] * a * a * du * du;
            x += nu_sk[s * l + r] * a * du;
        }
        out.e_t_closed[s] = m[s] / (3.0 * k_b) * y - m[s] / (3.0 * k_b * nu_s[s]) * x * x;
    }
    out
}

/// Contributions J1, J2, J3 of the closed form of Ē_T.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JTerms {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
}

/// AAP against GS. Returns the error terms and the J-split of Ē_T.
pub fn aap_gs_terms(n: &[f64], u: &[f64], t: &[f64], params: &MixtureParams) -> (ErrorTerms, Vec<JTerms>) {
    let l = params.species();
    let m = &params.masses;
    let k_b = params.k_gas;
    let (nu_s, _) = collision_frequencies(n, params);
    let aap = aap_aux_raw(n, u, t, &nu_s, params);
    let gs = gs_aux_raw(n, u, t, &nu_s, params);

    let s_vmn: f64 = (0..l).map(|r| nu_s[r] * m[r] * n[r]).sum();
    let s_vn: f64 = (0..l).map(|r| nu_s[r] * n[r]).sum();
    let kin: f64 = (0..l).map(|r| nu_s[r] * n[r] * m[r] * (gs.u * gs.u - u[r] * u[r])).sum();

    let mut out = ErrorTerms {
        e_u_def: vec![0.0; l],
        e_u_closed: vec![0.0; l],
        e_t_def: vec![0.0; l],
        e_t_closed: vec![0.0; l],
    };
    let mut js = Vec::with_capacity(l);
    for s in 0..l {
        out.e_u_def[s] = nu_s[s] * (aap.u[s] - gs.u);
        out.e_t_def[s] = nu_s[s] * (aap.t[s] - gs.t);

        let mut eu = 0.0;
        let mut j1 = 0.0;
        let mut x = 0.0;
        let mut j3b = 0.0;
        for r in 0..l {
            if r == s {
                continue;
            }
            let lam = params.lam(s, r);
            let ms = m[s] + m[r];
            let du = u[r] - u[s];
            eu += (lam * m[r] * n[r] / ms - nu_s[s] * nu_s[r] * m[r] * n[r] / s_vmn) * du;
            j1 += (2.0 * lam * m[s] * m[r] * n[r] / (ms * ms) - nu_s[s] * nu_s[r] * n[r] / s_vn) * (t[r] - t[s]);
            x += lam * m[r] * n[r] / ms * du;
            j3b += lam * m[r] * m[r] * n[r] / (ms * ms) * du * du;
        }
        let j2 = nu_s[s] * kin / (3.0 * k_b * s_vn);
        let j3 = -m[s] / (3.0 * k_b * nu_s[s]) * x * x + 2.0 * m[s] / (3.0 * k_b) * j3b;
        out.e_u_closed[s] = eu;
        out.e_t_closed[s] = j1 + j2 + j3;
        js.push(JTerms { j1, j2, j3 });
    }
    (out, js)
}

/// ‖g1ᴬ − g1ᴮ‖₁ / ‖g1ᴬ‖₁ per species; `a` is the reference.
pub fn l1_relative_distance(a: &KineticState, b: &KineticState, x: &SpatialGrid, v: &VelocityGrid) -> Result<Vec<f64>> {
    if a.species.len() != b.species.len() || a.nx() != b.nx() || a.nvn() != b.nvn() || a.nx() != x.nx || a.nvn() != v.len() {
        return Err(Error::GridMismatch("states differ in shape".into()));
    }
    let w = v.weights();
    let nvn = v.len();
    a.species
        .iter()
        .zip(&b.species)
        .map(|(pa, pb)| {
            let mut num = 0.0;
            let mut den = 0.0;
            for (idx, (ga, gb)) in pa.g1.iter().zip(&pb.g1).enumerate() {
                let wj = w[idx % nvn];
                num += wj * (ga - gb).abs();
                den += wj * ga.abs();
            }
            if den == 0.0 {
                return Err(Error::ZeroNorm);
            }
            Ok(num / den)
        })
        .collect()
}

/// ‖g1ᴬ − g1ᴮ‖₁ / ‖g1ᴬ‖₁ with all species pooled.
pub fn l1_relative_distance_pooled(a: &KineticState, b: &KineticState, x: &SpatialGrid, v: &VelocityGrid) -> Result<f64> {
    l1_relative_distance(a, b, x, v)?;
    let w = v.weights();
    let nvn = v.len();
    let mut num = 0.0;
    let mut den = 0.0;
    for (pa, pb) in a.species.iter().zip(&b.species) {
        for (idx, (ga, gb)) in pa.g1.iter().zip(&pb.g1).enumerate() {
            num += w[idx % nvn] * (ga - gb).abs();
            den += w[idx % nvn] * ga.abs();
        }
    }
    Ok(num / den)
}

/// Relative L¹ distance of two sampled fields (any quantity on the same grid).
pub fn l1_relative_fields(reference: &[f64], other: &[f64]) -> Result<f64> {
    if reference.len() != other.len() {
        return Err(Error::GridMismatch("field lengths differ".into()));
    }
    let den: f64 = reference.iter().map(|v| v.abs()).sum();
    if den == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(reference.iter().zip(other).map(|(a, b)| (a - b).abs()).sum::<f64>() / den)
}

/// Least-squares slope of log(distance) against log(ε).
pub fn loglog_slope(eps: &[f64], dist: &[f64]) -> Result<f64> {
    if eps.len() != dist.len() || eps.len() < 2 {
        return Err(Error::InvalidParams("slope fit needs two or more points".into()));
    }
    if eps.iter().chain(dist).any(|v| !(*v > 0.0)) {
        return Err(Error::InvalidParams("slope fit needs positive data".into()));
    }
    let xs: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let ys: Vec<f64> = dist.iter().map(|d| d.ln()).collect();
    let nf = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grids, BoundaryKind};
    use crate::params::{Model, UnitSystem};
    use crate::state::{init_maxwellian_state, maxwellian_1d, SpeciesFields};
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn four_gas() -> MixtureParams {
        MixtureParams::new(
            vec![58.5, 18.0, 40.0, 36.5],
            vec![
                vec![5.0, 6.0, 2.0, 7.0],
                vec![6.0, 4.0, 5.0, 8.0],
                vec![2.0, 5.0, 4.0, 3.0],
                vec![7.0, 8.0, 3.0, 6.0],
            ],
            UnitSystem::Abstract,
            Model::Aap,
            1.0,
            1.0,
        )
        .unwrap()
    }

    fn close(a: f64, b: f64, scale: f64) -> bool {
        (a - b).abs() <= 1e-12 * scale.max(1e-300)
    }

    #[test]
    fn aap_bbgsp_closed_forms_match_definitions() {
        let p = four_gas();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let n: Vec<f64> = (0..4).map(|_| rng.random_range(0.1..10.0)).collect();
            let u: Vec<f64> = (0..4).map(|_| rng.random_range(-5.0..5.0)).collect();
            let t: Vec<f64> = (0..4).map(|_| rng.random_range(0.1..10.0)).collect();
            let e = aap_bbgsp_terms(&n, &u, &t, &p);
            let (nu_s, _) = collision_frequencies(&n, &p);
            for s in 0..4 {
                let scale = nu_s[s] * (u.iter().fold(0.0f64, |a, b| a.max(b.abs())) + 1.0);
                assert!(e.e_u_def[s].abs() <= 1e-12 * scale);
                assert!(e.e_u_closed[s].abs() <= 1e-12 * scale);
                let tscale = e.e_t_def[s].abs().max(nu_s[s] * t.iter().fold(0.0f64, |a, b| a.max(*b)) * 1e-3);
                assert!(close(e.e_t_def[s], e.e_t_closed[s], tscale), "{} {}", e.e_t_def[s], e.e_t_closed[s]);
            }
        }
    }

    #[test]
    fn e_t_vanishes_for_common_velocity() {
        let p = four_gas();
        let e = aap_bbgsp_terms(&[0.3, 1.0, 2.0, 0.7], &[0.4; 4], &[1.0, 2.0, 3.0, 4.0], &p);
        for s in 0..4 {
            assert_eq!(e.e_t_closed[s], 0.0);
            assert!(e.e_t_def[s].abs() < 1e-12);
        }
    }

    #[test]
    fn aap_gs_closed_forms_match_definitions() {
        let p = four_gas();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let n: Vec<f64> = (0..4).map(|_| rng.random_range(0.1..10.0)).collect();
            let u: Vec<f64> = (0..4).map(|_| rng.random_range(-5.0..5.0)).collect();
            let t: Vec<f64> = (0..4).map(|_| rng.random_range(0.1..10.0)).collect();
            let (e, _) = aap_gs_terms(&n, &u, &t, &p);
            let (nu_s, _) = collision_frequencies(&n, &p);
            for s in 0..4 {
                let uscale = nu_s[s] * 10.0;
                assert!(close(e.e_u_def[s], e.e_u_closed[s], uscale));
                let tscale = nu_s[s] * (10.0 + 58.5 * 25.0);
                assert!(close(e.e_t_def[s], e.e_t_closed[s], tscale), "{} {}", e.e_t_def[s], e.e_t_closed[s]);
            }
        }
    }

    #[test]
    fn gs_terms_vanish_at_equilibrium() {
        let p = four_gas();
        let (e, _) = aap_gs_terms(&[0.3, 1.0, 2.0, 0.7], &[-0.2; 4], &[1.5; 4], &p);
        for s in 0..4 {
            for v in [e.e_u_def[s], e.e_u_closed[s], e.e_t_def[s], e.e_t_closed[s]] {
                assert!(v.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn symmetric_binary_velocity_coefficient() {
        // m = (m, m), n = (n, n), λ all λ: ν_s = 2λn and Σνmn = 4λn²m, so the
        // coefficient is λn/2 − (2λn)²mn/(4λn²m) = −λn/2
        let (mm, nn, lam) = (3.0, 0.7, 2.0);
        let p = MixtureParams::new(vec![mm, mm], vec![vec![lam; 2]; 2], UnitSystem::Abstract, Model::Aap, 1.0, 1.0).unwrap();
        let (e, _) = aap_gs_terms(&[nn, nn], &[1.0, -1.0], &[1.0, 1.0], &p);
        let coef = lam * mm * nn / (2.0 * mm) - (2.0 * lam * nn) * (2.0 * lam * nn) * mm * nn / (2.0 * 2.0 * lam * nn * mm * nn);
        assert_relative_eq!(coef, -lam * nn / 2.0, max_relative = 1e-15);
        assert_relative_eq!(e.e_u_closed[0], coef * (-2.0), max_relative = 1e-14);
        assert_relative_eq!(e.e_u_def[0], coef * (-2.0), max_relative = 1e-13);
        assert_relative_eq!(e.e_u_closed[1], coef * 2.0, max_relative = 1e-14);
    }

    #[test]
    fn distance_examples() {
        let (x, v) = make_grids((0.0, 1.0, 8), (-8.0, 8.0, 640), BoundaryKind::Periodic).unwrap();
        let p = MixtureParams::new(vec![1.0], vec![vec![1.0]], UnitSystem::Abstract, Model::Aap, 1.0, 1.0).unwrap();
        let a = init_maxwellian_state(&[SpeciesFields::uniform(8, 1.0, 0.0, 1.0)], &p, &x, &v).unwrap();
        assert_eq!(l1_relative_distance(&a, &a, &x, &v).unwrap(), vec![0.0]);
        let mut b = a.clone();
        b.species[0].g1.iter_mut().for_each(|g| *g *= 1.25);
        assert_relative_eq!(l1_relative_distance(&a, &b, &x, &v).unwrap()[0], 0.25, max_relative = 1e-14);

        // shifted unit Maxwellians: ‖M(·;0) − M(·;δ)‖₁ = 2 erf(δ/(2√2))
        let c = init_maxwellian_state(&[SpeciesFields::uniform(8, 1.0, 0.5, 1.0)], &p, &x, &v).unwrap();
        let d = l1_relative_distance(&a, &c, &x, &v).unwrap()[0];
        let fine = 200_000;
        let h = 40.0 / fine as f64;
        let exact: f64 = (0..fine)
            .map(|j| {
                let vv = -20.0 + (j as f64 + 0.5) * h;
                (maxwellian_1d(vv, 0.0, 1.0) - maxwellian_1d(vv, 0.5, 1.0)).abs() * h
            })
            .sum();
        assert_relative_eq!(d, exact, max_relative = 1e-3);
        let zero = KineticState { species: vec![crate::state::ChuPair::zeros(8, v.len())] };
        assert!(matches!(l1_relative_distance(&zero, &a, &x, &v), Err(Error::ZeroNorm)));
    }

    #[test]
    fn slope_fit_recovers_power_laws() {
        let eps = [1e-4, 1e-5, 1e-6];
        let d: Vec<f64> = eps.iter().map(|e| 3.0 * e * e).collect();
        assert_relative_eq!(loglog_slope(&eps, &d).unwrap(), 2.0, max_relative = 1e-12);
        let d: Vec<f64> = eps.iter().map(|e| 0.1 * e).collect();
        assert_relative_eq!(loglog_slope(&eps, &d).unwrap(), 1.0, max_relative = 1e-12);
        assert!(loglog_slope(&[1.0], &[1.0]).is_err());
    }
}
