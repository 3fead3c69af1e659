//! Classical four-stage Runge–Kutta on a set of fields.

use crate::error::{Error, Result};

pub type Fields = Vec<Vec<f64>>;

fn axpy(base: &Fields, a: f64, k: &Fields) -> Fields {
    base.iter().zip(k).map(|(b, k)| b.iter().zip(k).map(|(b, k)| b + a * k).collect()).collect()
}

pub fn rk4_step<F>(u: &Fields, dt: f64, mut rhs: F) -> Result<Fields>
where
    F: FnMut(&Fields) -> Result<Fields>,
{
    let k1 = rhs(u)?;
    let k2 = rhs(&axpy(u, 0.5 * dt, &k1))?;
    let k3 = rhs(&axpy(u, 0.5 * dt, &k2))?;
    let k4 = rhs(&axpy(u, dt, &k3))?;
    let mut out = u.clone();
    for (f, field) in out.iter_mut().enumerate() {
        for (i, v) in field.iter_mut().enumerate() {
            *v += dt / 6.0 * (k1[f][i] + 2.0 * k2[f][i] + 2.0 * k3[f][i] + k4[f][i]);
            if !v.is_finite() {
                return Err(Error::NonFinite { field: format!("variable {f}"), cell: i, t: f64::NAN });
            }
        }
    }
    Ok(out)
}
