//! Conservative reconstructions from cell averages.
//!
//! Each cell carries a polynomial p(ξ) = c0 + c1 ξ + c2 ξ² in the local
//! coordinate ξ ∈ [-1/2, 1/2] whose mean over the cell is the cell average.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reconstruction {
    /// Piecewise linear with minmod slopes; second order away from extrema.
    Pl2,
    /// Piecewise parabolic with smoothness-weighted blending of one
    /// parabola and two lines; third order on smooth data.
    Pp3,
}

impl std::str::FromStr for Reconstruction {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pl2" => Ok(Reconstruction::Pl2),
            "pp3" => Ok(Reconstruction::Pp3),
            other => Err(crate::error::Error::InvalidParams(format!("unknown reconstruction `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Poly {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Poly {
    #[inline]
    pub fn eval(&self, xi: f64) -> f64 {
        self.c0 + xi * (self.c1 + xi * self.c2)
    }

    /// Antiderivative vanishing at ξ = 0.
    #[inline]
    pub fn primitive(&self, xi: f64) -> f64 {
        xi * (self.c0 + xi * (0.5 * self.c1 + xi * self.c2 / 3.0))
    }

    /// ∫ over the right-most fraction θ of the cell, [1/2 − θ, 1/2].
    #[inline]
    pub fn right_integral(&self, theta: f64) -> f64 {
        self.primitive(0.5) - self.primitive(0.5 - theta)
    }

    /// ∫ over the left-most fraction θ of the cell, [−1/2, −1/2 + θ].
    #[inline]
    pub fn left_integral(&self, theta: f64) -> f64 {
        self.primitive(-0.5 + theta) - self.primitive(-0.5)
    }

    /// Minimum and maximum over the cell.
    pub fn range(&self) -> (f64, f64) {
        let a = self.eval(-0.5);
        let b = self.eval(0.5);
        let (mut lo, mut hi) = if a < b { (a, b) } else { (b, a) };
        if self.c2 != 0.0 {
            let xv = -self.c1 / (2.0 * self.c2);
            if xv.abs() < 0.5 {
                let e = self.eval(xv);
                lo = lo.min(e);
                hi = hi.max(e);
            }
        }
        (lo, hi)
    }
}

#[inline]
fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

#[inline]
pub fn pl2(gm: f64, g0: f64, gp: f64) -> Poly {
    Poly { c0: g0, c1: minmod(gp - g0, g0 - gm), c2: 0.0 }
}

/// Third-order central WENO-type reconstruction with linear weights
/// (1/2, 1/4, 1/4) and optional bound-preserving scaling toward the mean.
#[inline]
pub fn pp3(gm: f64, g0: f64, gp: f64, eps_w: f64, limit: bool) -> Poly {
    const D0: f64 = 0.5;
    const DS: f64 = 0.25;
    let a2 = 0.5 * (gp - 2.0 * g0 + gm);
    let a1 = 0.5 * (gp - gm);
    let a0 = g0 - a2 / 12.0;
    let sl = g0 - gm;
    let sr = gp - g0;
    // P0 = (Popt − dL PL − dR PR) / d0
    let p0 = Poly {
        c0: (a0 - 2.0 * DS * g0) / D0,
        c1: (a1 - DS * (sl + sr)) / D0,
        c2: a2 / D0,
    };
    let b0 = p0.c1 * p0.c1 + 13.0 / 3.0 * p0.c2 * p0.c2;
    let bl = sl * sl;
    let br = sr * sr;
    // only the ratios matter; rescale so tail values do not underflow
    let sc = eps_w.max(b0).max(bl).max(br);
    let e = (eps_w / sc).max(1e-100);
    let (b0, bl, br) = (b0 / sc, bl / sc, br / sc);
    let w0 = D0 / ((e + b0) * (e + b0));
    let wl = DS / ((e + bl) * (e + bl));
    let wr = DS / ((e + br) * (e + br));
    let ws = w0 + wl + wr;
    let (w0, wl, wr) = (w0 / ws, wl / ws, wr / ws);
    let mut p = Poly {
        c0: w0 * p0.c0 + (wl + wr) * g0,
        c1: w0 * p0.c1 + wl * sl + wr * sr,
        c2: w0 * p0.c2,
    };
    if limit {
        let lo = gm.min(g0).min(gp);
        let hi = gm.max(g0).max(gp);
        let (pmin, pmax) = p.range();
        let mut th: f64 = 1.0;
        if pmax > hi {
            th = th.min((hi - g0) / (pmax - g0));
        }
        if pmin < lo {
            th = th.min((g0 - lo) / (g0 - pmin));
        }
        if th < 1.0 {
            let th = th.max(0.0);
            p.c0 = g0 + th * (p.c0 - g0);
            p.c1 *= th;
            p.c2 *= th;
        }
    }
    p
}

/// Reconstruct every cell of `row` that has two neighbours; the first and
/// last entries of the output are left as constants.
pub fn reconstruct_row(row: &[f64], recon: Reconstruction, eps_w: f64, limit: bool, out: &mut [Poly]) {
    let n = row.len();
    out[0] = Poly { c0: row[0], ..Poly::default() };
    out[n - 1] = Poly { c0: row[n - 1], ..Poly::default() };
    for c in 1..n - 1 {
        out[c] = match recon {
            Reconstruction::Pl2 => pl2(row[c - 1], row[c], row[c + 1]),
            Reconstruction::Pp3 => pp3(row[c - 1], row[c], row[c + 1], eps_w, limit),
        };
    }
}
