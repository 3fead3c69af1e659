//! Rankine–Hugoniot states for a stationary shock in a mixture with common
//! velocity and temperature on both sides.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the Mach parameter fixes the downstream speed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MachReading {
    /// u∞ = Ma c∞.
    #[default]
    Conventional,
    /// u∞ = Ma² c∞.
    Literal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhStates {
    /// (n_s, u, T) per species, upstream side (x → −∞).
    pub left: Vec<(f64, f64, f64)>,
    /// (n_s, u, T) per species, downstream side (x → +∞).
    pub right: Vec<(f64, f64, f64)>,
    pub mach: f64,
    pub c_inf: f64,
    pub u_inf: f64,
}

/// Density, velocity and temperature ratios E_L / E_R.
pub fn rh_factors(mach: f64) -> Result<(f64, f64, f64)> {
    let m2 = mach * mach;
    if !(m2 > 0.2) || !m2.is_finite() {
        return Err(Error::InvalidParams(format!("Mach parameter {mach} needs Ma² > 1/5")));
    }
    Ok((4.0 * m2 / (m2 + 3.0), (m2 + 3.0) / (4.0 * m2), (5.0 * m2 - 1.0) * (m2 + 3.0) / (16.0 * m2)))
}

pub fn rankine_hugoniot(n_inf: &[f64], masses: &[f64], t_inf: f64, mach: f64, reading: MachReading, k_gas: f64) -> Result<RhStates> {
    if n_inf.len() != masses.len() || n_inf.iter().any(|n| !(*n > 0.0)) || !(t_inf > 0.0) {
        return Err(Error::InvalidParams("far-field state must be positive with one density per species".into()));
    }
    let (fn_, fu, ft) = rh_factors(mach)?;
    let n: f64 = n_inf.iter().sum();
    let rho: f64 = n_inf.iter().zip(masses).map(|(n, m)| n * m).sum();
    let c_inf = (5.0 * n * k_gas * t_inf / (3.0 * rho)).sqrt();
    let u_inf = match reading {
        MachReading::Conventional => mach * c_inf,
        MachReading::Literal => mach * mach * c_inf,
    };
    Ok(RhStates {
        left: n_inf.iter().map(|n| (fn_ * n, fu * u_inf, ft * t_inf)).collect(),
        right: n_inf.iter().map(|n| (*n, u_inf, t_inf)).collect(),
        mach,
        c_inf,
        u_inf,
    })
}

/// E_L + (E_R − E_L)(tanh(a x) + 1)/2, componentwise.
pub fn blend(left: (f64, f64, f64), right: (f64, f64, f64), a: f64, x: f64) -> (f64, f64, f64) {
    let w = 0.5 * ((a * x).tanh() + 1.0);
    (left.0 + (right.0 - left.0) * w, left.1 + (right.1 - left.1) * w, left.2 + (right.2 - left.2) * w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn factor_examples() {
        let (a, b, c) = rh_factors(0.6f64.sqrt()).unwrap();
        assert_relative_eq!(a, 2.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(b, 1.5, max_relative = 1e-14);
        assert_relative_eq!(c, 0.75, max_relative = 1e-14);
        assert_eq!(rh_factors(1.0).unwrap(), (1.0, 1.0, 1.0));
        assert!(rh_factors(0.4).is_err());
    }

    #[test]
    fn sound_speed_example() {
        let rh = rankine_hugoniot(&[0.1, 0.9], &[20.0, 40.0], 300.0, 0.6f64.sqrt(), MachReading::Conventional, 1.0).unwrap();
        assert_relative_eq!(rh.c_inf, (5.0f64 * 300.0 / (3.0 * 38.0)).sqrt(), max_relative = 1e-14);
        assert_relative_eq!(rh.u_inf, 0.6f64.sqrt() * rh.c_inf, max_relative = 1e-14);
        let lit = rankine_hugoniot(&[0.1, 0.9], &[20.0, 40.0], 300.0, 0.6f64.sqrt(), MachReading::Literal, 1.0).unwrap();
        assert_relative_eq!(lit.u_inf, 0.6 * rh.c_inf, max_relative = 1e-14);
    }

    fn fluxes(states: &[(f64, f64, f64)], m: &[f64]) -> [f64; 3] {
        let rho: f64 = states.iter().zip(m).map(|(s, m)| s.0 * m).sum();
        let n: f64 = states.iter().map(|s| s.0).sum();
        let (u, t) = (states[0].1, states[0].2);
        [rho * u, rho * u * u + n * t, (0.5 * rho * u * u + 2.5 * n * t) * u]
    }

    #[test]
    fn conventional_reading_conserves_fluxes_across_the_jump() {
        let m = [20.0, 40.0];
        let rh = rankine_hugoniot(&[0.1, 0.9], &m, 300.0, 0.6f64.sqrt(), MachReading::Conventional, 1.0).unwrap();
        let (fl, fr) = (fluxes(&rh.left, &m), fluxes(&rh.right, &m));
        for q in 0..3 {
            assert_relative_eq!(fl[q], fr[q], max_relative = 1e-13);
        }
        // species fluxes match separately because both species share u
        for s in 0..2 {
            assert_relative_eq!(rh.left[s].0 * rh.left[s].1, rh.right[s].0 * rh.right[s].1, max_relative = 1e-14);
        }
        let lit = rankine_hugoniot(&[0.1, 0.9], &m, 300.0, 0.6f64.sqrt(), MachReading::Literal, 1.0).unwrap();
        let (fl, fr) = (fluxes(&lit.left, &m), fluxes(&lit.right, &m));
        assert!((fl[1] - fr[1]).abs() > 1e-3 * fr[1]);
    }

    #[test]
    fn blend_limits() {
        let l = (1.0, 2.0, 3.0);
        let r = (4.0, 5.0, 6.0);
        assert_eq!(blend(l, r, 2.0, -50.0), l);
        assert_eq!(blend(l, r, 2.0, 50.0), r);
        assert_eq!(blend(l, r, 2.0, 0.0), (2.5, 3.5, 4.5));
    }
}
