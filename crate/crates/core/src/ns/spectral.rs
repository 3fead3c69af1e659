//! Fourier differentiation on a periodic uniform grid.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

pub struct SpectralDiff {
    n: usize,
    length: f64,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for SpectralDiff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralDiff").field("n", &self.n).field("length", &self.length).finish()
    }
}

impl SpectralDiff {
    pub fn new(n: usize, length: f64) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(Error::InvalidGrid(format!("spectral grid needs an even size ≥ 4, got {n}")));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidGrid("spectral domain length must be positive".into()));
        }
        let mut planner = FftPlanner::new();
        Ok(Self { n, length, fwd: planner.plan_fft_forward(n), inv: planner.plan_fft_inverse(n) })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn wavenumber(&self, j: usize) -> f64 {
        let jj = if j <= self.n / 2 { j as f64 } else { j as f64 - self.n as f64 };
        2.0 * PI * jj / self.length
    }

    /// `order`-th derivative of a periodic field. The Nyquist mode is dropped
    /// for odd orders.
    pub fn derivative(&self, field: &[f64], order: u32) -> Vec<f64> {
        assert_eq!(field.len(), self.n);
        if order == 0 {
            return field.to_vec();
        }
        let mut buf: Vec<Complex<f64>> = field.iter().map(|&x| Complex::new(x, 0.0)).collect();
        self.fwd.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        for (j, c) in buf.iter_mut().enumerate() {
            if j == self.n / 2 && order % 2 == 1 {
                *c = Complex::new(0.0, 0.0);
                continue;
            }
            let ik = Complex::new(0.0, self.wavenumber(j));
            *c *= ik.powu(order) * scale;
        }
        buf[0] = Complex::new(0.0, 0.0);
        self.inv.process(&mut buf);
        buf.iter().map(|c| c.re).collect()
    }

    pub fn d1(&self, field: &[f64]) -> Vec<f64> {
        self.derivative(field, 1)
    }
}
