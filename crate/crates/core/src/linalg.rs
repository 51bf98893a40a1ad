//! Dense symmetric linear algebra: cyclic Jacobi eigensolver and a jittered
//! Cholesky solve.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Sweep limit of the Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-10;

/// Eigenvalues (ascending) and orthonormal eigenvectors (as columns).
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

impl SymEigen {
    /// `max |U diag(values) U^T - m|`.
    pub fn reconstruction_residual(&self, m: &DMatrix<f64>) -> f64 {
        let rebuilt = &self.vectors * DMatrix::from_diagonal(&self.values) * self.vectors.transpose();
        (rebuilt - m).amax()
    }

    /// `max |U^T U - I|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.vectors.ncols();
        (self.vectors.transpose() * &self.vectors - DMatrix::<f64>::identity(n, n)).amax()
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
pub fn eig_sym(m: &DMatrix<f64>) -> Result<SymEigen> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::Dimension { expected: n, got: m.ncols() });
    }
    let scale = m.amax().max(1.0);
    for i in 0..n {
        for j in i + 1..n {
            if (m[(i, j)] - m[(j, i)]).abs() > SYMMETRY_TOL * scale {
                return Err(Error::Invalid(format!("matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    let mut a = m.clone();
    // symmetrize exactly
    for i in 0..n {
        for j in i + 1..n {
            let v = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    let mut v = DMatrix::<f64>::identity(n, n);
    let frob = a.norm();
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * frob || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::Numerical(format!("Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]).then(i.cmp(&j)));
    let values = DVector::from_iterator(n, order.iter().map(|&i| a[(i, i)]));
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &v.column(i));
    }
    Ok(SymEigen { values, vectors })
}

/// Cholesky factor of `m + jitter I`, raising the jitter tenfold up to five
/// times if the factorization fails.
pub fn cholesky_jittered(m: &DMatrix<f64>, jitter: f64) -> Result<nalgebra::Cholesky<f64, nalgebra::Dyn>> {
    let n = m.nrows();
    let mut j = jitter;
    for _ in 0..6 {
        let shifted = m + DMatrix::<f64>::identity(n, n) * j;
        if let Some(ch) = shifted.cholesky() {
            return Ok(ch);
        }
        j = if j > 0.0 { j * 10.0 } else { 1e-12 };
    }
    Err(Error::Numerical("matrix is not positive definite even after jitter".into()))
}
