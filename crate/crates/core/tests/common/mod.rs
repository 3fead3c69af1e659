#![allow(dead_code)]

use mixbgk::{MixtureParams, Model, UnitSystem};
use rand::Rng;

pub const MASSES: [f64; 4] = [58.5, 18.0, 40.0, 36.5];
pub const LAMBDA: [[f64; 4]; 4] = [[5.0, 6.0, 2.0, 7.0], [6.0, 4.0, 5.0, 8.0], [2.0, 5.0, 4.0, 3.0], [7.0, 8.0, 3.0, 6.0]];

/// The first `l` species of the four-gas mixture.
pub fn four_gas(l: usize, model: Model, eps: f64) -> MixtureParams {
    let lambda = (0..l).map(|s| LAMBDA[s][..l].to_vec()).collect();
    MixtureParams::new(MASSES[..l].to_vec(), lambda, UnitSystem::Abstract, model, eps, eps).unwrap()
}

/// Admissible moments with wide spreads in velocity and temperature.
pub fn random_moments<R: Rng>(rng: &mut R, l: usize) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = (0..l).map(|_| rng.random_range(0.01..2.0)).collect();
    let u = (0..l).map(|_| rng.random_range(-5.0..5.0)).collect();
    let t = (0..l).map(|_| rng.random_range(0.05..50.0)).collect();
    (n, u, t)
}

/// Exact solution of the Riemann problem for a polytropic gas (Toro, ch. 4).
#[derive(Debug, Clone, Copy)]
pub struct Primitive {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

pub struct ExactRiemann {
    pub left: Primitive,
    pub right: Primitive,
    pub gamma: f64,
    pub p_star: f64,
    pub u_star: f64,
}

impl ExactRiemann {
    pub fn new(left: Primitive, right: Primitive, gamma: f64) -> Self {
        let mut s = ExactRiemann { left, right, gamma, p_star: 0.0, u_star: 0.0 };
        let du = right.u - left.u;
        let mut p = (0.5 * (left.p + right.p)).max(1e-8);
        for _ in 0..100 {
            let (fl, dl) = s.f(p, left);
            let (fr, dr) = s.f(p, right);
            let next = (p - (fl + fr + du) / (dl + dr)).max(1e-10);
            let done = (next - p).abs() < 1e-14 * p;
            p = next;
            if done {
                break;
            }
        }
        s.p_star = p;
        s.u_star = 0.5 * (left.u + right.u) + 0.5 * (s.f(p, right).0 - s.f(p, left).0);
        s
    }

    fn sound(&self, w: Primitive) -> f64 {
        (self.gamma * w.p / w.rho).sqrt()
    }

    /// Pressure function and its derivative.
    fn f(&self, p: f64, w: Primitive) -> (f64, f64) {
        let g = self.gamma;
        let c = self.sound(w);
        if p > w.p {
            let a = 2.0 / ((g + 1.0) * w.rho);
            let b = (g - 1.0) / (g + 1.0) * w.p;
            let q = (a / (p + b)).sqrt();
            ((p - w.p) * q, q * (1.0 - 0.5 * (p - w.p) / (p + b)))
        } else {
            let e = (g - 1.0) / (2.0 * g);
            (2.0 * c / (g - 1.0) * ((p / w.p).powf(e) - 1.0), (p / w.p).powf(-(g + 1.0) / (2.0 * g)) / (w.rho * c))
        }
    }

    /// State at similarity coordinate ξ = x / t.
    pub fn sample(&self, xi: f64) -> Primitive {
        let g = self.gamma;
        let (ps, us) = (self.p_star, self.u_star);
        if xi <= us {
            let w = self.left;
            let c = self.sound(w);
            if ps > w.p {
                let r = ps / w.p;
                let sl = w.u - c * ((g + 1.0) / (2.0 * g) * r + (g - 1.0) / (2.0 * g)).sqrt();
                if xi < sl {
                    w
                } else {
                    let rho = w.rho * (r + (g - 1.0) / (g + 1.0)) / ((g - 1.0) / (g + 1.0) * r + 1.0);
                    Primitive { rho, u: us, p: ps }
                }
            } else {
                let cs = c * (ps / w.p).powf((g - 1.0) / (2.0 * g));
                if xi < w.u - c {
                    w
                } else if xi > us - cs {
                    Primitive { rho: w.rho * (ps / w.p).powf(1.0 / g), u: us, p: ps }
                } else {
                    let k = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (w.u - xi);
                    Primitive {
                        rho: w.rho * k.powf(2.0 / (g - 1.0)),
                        u: 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.u + xi),
                        p: w.p * k.powf(2.0 * g / (g - 1.0)),
                    }
                }
            }
        } else {
            let w = self.right;
            let c = self.sound(w);
            if ps > w.p {
                let r = ps / w.p;
                let sr = w.u + c * ((g + 1.0) / (2.0 * g) * r + (g - 1.0) / (2.0 * g)).sqrt();
                if xi > sr {
                    w
                } else {
                    let rho = w.rho * (r + (g - 1.0) / (g + 1.0)) / ((g - 1.0) / (g + 1.0) * r + 1.0);
                    Primitive { rho, u: us, p: ps }
                }
            } else {
                let cs = c * (ps / w.p).powf((g - 1.0) / (2.0 * g));
                if xi > w.u + c {
                    w
                } else if xi < us + cs {
                    Primitive { rho: w.rho * (ps / w.p).powf(1.0 / g), u: us, p: ps }
                } else {
                    let k = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (w.u - xi);
                    Primitive {
                        rho: w.rho * k.powf(2.0 / (g - 1.0)),
                        u: 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.u + xi),
                        p: w.p * k.powf(2.0 * g / (g - 1.0)),
                    }
                }
            }
        }
    }
}

#[test]
fn sod_star_state() {
    // Toro, test 1: p* = 0.30313, u* = 0.92745 for γ = 1.4
    let r = ExactRiemann::new(Primitive { rho: 1.0, u: 0.0, p: 1.0 }, Primitive { rho: 0.125, u: 0.0, p: 0.1 }, 1.4);
    assert!((r.p_star - 0.30313).abs() < 1e-5);
    assert!((r.u_star - 0.92745).abs() < 1e-5);
    let s = r.sample(r.u_star - 1e-9);
    assert!((s.rho - 0.42632).abs() < 1e-5);
}
