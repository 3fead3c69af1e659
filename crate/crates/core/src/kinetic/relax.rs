//! Implicit relaxation step.
//!
//! Backward Euler for ∂_t g = Ĝ[W] − Λ g per cell:
//!
//! ```text
//! g^{n+1} = (g̃ + Δt Ĝ[W^{n+1}]) / (1 + Δt Λ)
//! ```
//!
//! The moments W^{n+1} come first from the backward-Euler step of the
//! moment equations. Momentum exchange is linear in the velocities and,
//! with the velocities fixed, energy exchange is affine in the
//! temperatures, so both stages are L×L linear solves.

use rayon::prelude::*;

use crate::closures::{build_attractor, relaxation_exchange, Closure};
use crate::error::{Error, Result};
use crate::grid::VelocityGrid;
use crate::linalg::solve;
use crate::moments::cell_moments;
use crate::params::MixtureParams;
use crate::state::{ChuPair, KineticState};

/// Backward-Euler update of (u_s, T_s) under the homogeneous exchange
/// dynamics; densities are unchanged.
pub fn moment_solve(n: &[f64], u: &[f64], t: &[f64], dt: f64, params: &MixtureParams) -> Result<(Vec<f64>, Vec<f64>)> {
    let l = params.species();
    let m = &params.masses;
    let k = params.k_gas;
    if dt == 0.0 || l == 1 {
        return Ok((u.to_vec(), t.to_vec()));
    }

    // Stage 1: (diag ρ − Δt C) u = ρ ũ, with C_sk = ∂ mom_s / ∂ u_k.
    let mut a = vec![0.0; l * l];
    let mut probe = vec![0.0; l];
    for kk in 0..l {
        probe.iter_mut().for_each(|x| *x = 0.0);
        probe[kk] = 1.0;
        let c = Closure::compute_raw(n, &probe, t, params);
        let (mom, _) = relaxation_exchange(n, &probe, t, params, &c);
        for s in 0..l {
            a[s * l + kk] = -dt * mom[s];
        }
    }
    // Solve for deviations from the conserved mixture velocity so that
    // equilibria are fixed points and rounding scales with the deviation.
    let rho_tot: f64 = (0..l).map(|s| m[s] * n[s]).sum();
    let ubar = (0..l).map(|s| m[s] * n[s] * u[s]).sum::<f64>() / rho_tot;
    let mut rhs = vec![0.0; l];
    for s in 0..l {
        let rho = m[s] * n[s];
        a[s * l + s] += rho;
        rhs[s] = rho * (u[s] - ubar);
    }
    let u_new: Vec<f64> = solve(&a, &rhs, l)?.into_iter().map(|w| ubar + w).collect();

    // Stage 2: (3/2) n_s K T_s − Δt Σ D_sk T_k = Ẽ_s − ½ ρ_s u_s² + Δt e_s.
    // The exchange is affine in T; it is linearized around the common
    // temperature Θ carrying the internal energy left after the velocity
    // stage, so equilibria are fixed points.
    let zero = vec![0.0; l];
    let c0 = Closure::compute_raw(n, &u_new, &zero, params);
    let (_, e0) = relaxation_exchange(n, &u_new, &zero, params, &c0);
    let mut a = vec![0.0; l * l];
    for kk in 0..l {
        probe.iter_mut().for_each(|x| *x = 0.0);
        probe[kk] = 1.0;
        let c = Closure::compute_raw(n, &u_new, &probe, params);
        let (_, e) = relaxation_exchange(n, &u_new, &probe, params, &c);
        for s in 0..l {
            a[s * l + kk] = -dt * (e[s] - e0[s]);
        }
    }
    let mut rhs = vec![0.0; l];
    for s in 0..l {
        let rho = m[s] * n[s];
        let e_old = 0.5 * rho * u[s] * u[s] + 1.5 * n[s] * k * t[s];
        rhs[s] = e_old - 0.5 * rho * u_new[s] * u_new[s];
    }
    let theta = rhs.iter().sum::<f64>() / (1.5 * k * n.iter().sum::<f64>());
    let common = vec![theta; l];
    let ct = Closure::compute_raw(n, &u_new, &common, params);
    let (_, et) = relaxation_exchange(n, &u_new, &common, params, &ct);
    // the exchange conserves energy; drop its rounding-level net sum
    let n_tot: f64 = n.iter().sum();
    let net = et.iter().sum::<f64>();
    for s in 0..l {
        rhs[s] += dt * (et[s] - net * n[s] / n_tot) - 1.5 * n[s] * k * theta;
        a[s * l + s] += 1.5 * n[s] * k;
    }
    let t_new: Vec<f64> = solve(&a, &rhs, l)?.into_iter().map(|d| theta + d).collect();
    if let Some(s) = t_new.iter().position(|v| !(*v > 0.0)) {
        return Err(Error::InadmissibleTemperature { species: s, value: t_new[s] });
    }
    Ok((u_new, t_new))
}

/// Relax one cell in place. `g1[s]`, `g2[s]` are the species rows.
pub fn relax_cell(
    g1: &mut [&mut [f64]],
    g2: &mut [&mut [f64]],
    dt: f64,
    params: &MixtureParams,
    v: &VelocityGrid,
    w: &[f64],
    cell: usize,
) -> Result<()> {
    let l = params.species();
    let mut n = vec![0.0; l];
    let mut u = vec![0.0; l];
    let mut t = vec![0.0; l];
    for s in 0..l {
        let c = cell_moments(g1[s], g2[s], params.masses[s], params.k_gas, v, w);
        if c.vacuum {
            return Err(Error::NonPositive { what: "density", value: c.n, cell });
        }
        // stage data of the DIRK composition may carry less internal energy
        // than a Maxwellian; only the relaxed temperatures must be positive
        if !c.t.is_finite() {
            return Err(Error::NonFinite { field: "stage temperature".into(), cell, t: f64::NAN });
        }
        n[s] = c.n;
        u[s] = c.u;
        t[s] = c.t;
    }
    let (un, tn) = moment_solve(&n, &u, &t, dt, params)?;
    let closure = Closure::compute(&n, &un, &tn, params)?;
    let nvn = v.len();
    let mut a1 = vec![0.0; nvn];
    let mut a2 = vec![0.0; nvn];
    for s in 0..l {
        let lam = build_attractor(&closure, s, n[s], params, v, &mut a1, &mut a2);
        let inv = 1.0 / (1.0 + dt * lam);
        for j in 0..nvn {
            g1[s][j] = (g1[s][j] + dt * a1[j]) * inv;
            g2[s][j] = (g2[s][j] + dt * a2[j]) * inv;
        }
    }
    Ok(())
}

/// Relax every cell of `state` over `dt`.
pub fn relax_implicit(state: &KineticState, dt: f64, params: &MixtureParams, v: &VelocityGrid) -> Result<KineticState> {
    let l = params.species();
    let nx = state.nx();
    let nvn = state.nvn();
    let w = v.weights();
    let blocks: Vec<Vec<f64>> = (0..nx)
        .into_par_iter()
        .map(|i| {
            // block layout: [g1 of each species, then g2 of each species]
            let mut block = vec![0.0; 2 * l * nvn];
            for s in 0..l {
                let (a, b) = state.species[s].cell(i);
                block[s * nvn..(s + 1) * nvn].copy_from_slice(a);
                block[(l + s) * nvn..(l + s + 1) * nvn].copy_from_slice(b);
            }
            let (h1, h2) = block.split_at_mut(l * nvn);
            let mut r1: Vec<&mut [f64]> = h1.chunks_mut(nvn).collect();
            let mut r2: Vec<&mut [f64]> = h2.chunks_mut(nvn).collect();
            relax_cell(&mut r1, &mut r2, dt, params, v, &w, i)?;
            Ok(block)
        })
        .collect::<Result<_>>()?;
    let mut species: Vec<ChuPair> = (0..l).map(|_| ChuPair::zeros(nx, nvn)).collect();
    for (i, block) in blocks.iter().enumerate() {
        for (s, p) in species.iter_mut().enumerate() {
            p.g1[i * nvn..(i + 1) * nvn].copy_from_slice(&block[s * nvn..(s + 1) * nvn]);
            p.g2[i * nvn..(i + 1) * nvn].copy_from_slice(&block[(l + s) * nvn..(l + s + 1) * nvn]);
        }
    }
    Ok(KineticState { species })
}
