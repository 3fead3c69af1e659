//! Small dense linear solves (L ≤ 8) backed by nalgebra's LU.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Solve `A x = b` for a row-major `n x n` matrix `a`.
pub fn solve(a: &[f64], b: &[f64], n: usize) -> Result<Vec<f64>> {
    let m = DMatrix::from_row_slice(n, n, a);
    let rhs = DVector::from_column_slice(b);
    let lu = m.lu();
    if !lu.is_invertible() {
        return Err(Error::Singular(format!("{n}x{n} system")));
    }
    let x = lu.solve(&rhs).ok_or_else(|| Error::Singular(format!("{n}x{n} system")))?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular(format!("{n}x{n} system has non-finite solution")));
    }
    Ok(x.iter().copied().collect())
}

/// Solve `A X = B` with row-major `n x n` matrices; returns `X` row-major.
pub fn solve_matrix(a: &[f64], b: &[f64], n: usize) -> Result<Vec<f64>> {
    let m = DMatrix::from_row_slice(n, n, a);
    let rhs = DMatrix::from_row_slice(n, n, b);
    let lu = m.lu();
    if !lu.is_invertible() {
        return Err(Error::Singular(format!("{n}x{n} matrix")));
    }
    let x = lu.solve(&rhs).ok_or_else(|| Error::Singular(format!("{n}x{n} matrix")))?;
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = x[(i, j)];
        }
    }
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular(format!("{n}x{n} matrix has non-finite inverse")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn solves_small_systems() {
        let a = [4.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 2.0];
        let x = solve(&a, &[1.0, 2.0, 3.0], 3).unwrap();
        for i in 0..3 {
            let r: f64 = (0..3).map(|j| a[i * 3 + j] * x[j]).sum();
            assert_relative_eq!(r, [1.0, 2.0, 3.0][i], epsilon = 1e-14);
        }
        let inv = solve_matrix(&a, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0], 3).unwrap();
        assert_relative_eq!(inv[0] * a[0] + inv[1] * a[3] + inv[2] * a[6], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn rejects_singular() {
        assert!(solve(&[1.0, 2.0, 2.0, 4.0], &[1.0, 1.0], 2).is_err());
    }
}
