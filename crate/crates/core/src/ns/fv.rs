//! MacCormack predictor–corrector on a uniform grid with ghost cells.

use super::rk4::Fields;
use super::ConservationSystem;
use crate::error::{Error, Result};

/// Boundary treatment for the finite-difference path.
#[derive(Debug, Clone, PartialEq)]
pub enum FvBoundary {
    Periodic,
    /// Zeroth-order extrapolation.
    FreeFlow,
    /// Ghosts hold fixed conservative states (one value per variable).
    Fixed { left: Vec<f64>, right: Vec<f64> },
}

pub const GHOST: usize = 2;

pub fn extend(u: &Fields, bc: &FvBoundary) -> Fields {
    let g = GHOST;
    u.iter()
        .enumerate()
        .map(|(f, row)| {
            let n = row.len();
            let mut ext = vec![0.0; n + 2 * g];
            ext[g..g + n].copy_from_slice(row);
            for q in 0..g {
                let (l, r) = match bc {
                    FvBoundary::Periodic => (row[(n - g + q) % n], row[q % n]),
                    FvBoundary::FreeFlow => (row[0], row[n - 1]),
                    FvBoundary::Fixed { left, right } => (left[f], right[f]),
                };
                ext[q] = l;
                ext[g + n + q] = r;
            }
            ext
        })
        .collect()
}

/// Second-order central difference, one-sided at the two ends.
pub fn central_gradient(a: &[f64], dx: f64) -> Vec<f64> {
    let n = a.len();
    let mut d = vec![0.0; n];
    for i in 1..n - 1 {
        d[i] = (a[i + 1] - a[i - 1]) / (2.0 * dx);
    }
    d[0] = (a[1] - a[0]) / dx;
    d[n - 1] = (a[n - 1] - a[n - 2]) / dx;
    d
}

/// One MacCormack step: forward-difference predictor, backward-difference
/// corrector. `art_visc` adds a pressure-switched second difference
/// (0 disables it).
pub fn maccormack_step<S: ConservationSystem + ?Sized>(
    sys: &S,
    u: &Fields,
    dt: f64,
    dx: f64,
    bc: &FvBoundary,
    art_visc: f64,
) -> Result<Fields> {
    let g = GHOST;
    let n = u[0].len();
    let r = dt / dx;
    let grad = |a: &[f64]| central_gradient(a, dx);

    let ext = extend(u, bc);
    let f = sys.flux(&ext, &grad)?;
    let s0 = sys.source(&ext)?;
    let mut pred = u.clone();
    for (v, row) in pred.iter_mut().enumerate() {
        for i in 0..n {
            let e = i + g;
            row[i] -= r * (f[v][e + 1] - f[v][e]);
            if let Some(s) = &s0 {
                row[i] += dt * s[v][e];
            }
        }
    }
    let ext_p = extend(&pred, bc);
    let fp = sys.flux(&ext_p, &grad)?;
    let s1 = sys.source(&ext_p)?;
    let mut out = u.clone();
    for (v, row) in out.iter_mut().enumerate() {
        for i in 0..n {
            let e = i + g;
            let mut c = pred[v][i] - r * (fp[v][e] - fp[v][e - 1]);
            if let Some(s) = &s1 {
                c += dt * s[v][e];
            }
            row[i] = 0.5 * (u[v][i] + c);
        }
    }
    if art_visc > 0.0 {
        let ext_o = extend(&out, bc);
        let p = sys.pressure(&ext_o)?;
        let m = ext_o[0].len();
        let mut sw = vec![0.0; m];
        for i in 1..m - 1 {
            let den = p[i + 1] + 2.0 * p[i] + p[i - 1];
            sw[i] = if den > 0.0 { (p[i + 1] - 2.0 * p[i] + p[i - 1]).abs() / den } else { 0.0 };
        }
        for (v, row) in out.iter_mut().enumerate() {
            let a = &ext_o[v];
            for i in 0..n {
                let e = i + g;
                let ep = art_visc * sw[e].max(sw[e + 1]);
                let em = art_visc * sw[e].max(sw[e - 1]);
                row[i] += ep * (a[e + 1] - a[e]) - em * (a[e] - a[e - 1]);
            }
        }
    }
    sys.implicit_source(&mut out, dt)?;
    for (v, row) in out.iter().enumerate() {
        if let Some(i) = row.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { field: format!("variable {v}"), cell: i, t: f64::NAN });
        }
    }
    Ok(out)
}
