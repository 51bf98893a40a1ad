//! Diffusion kernels on a graph.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::eig_sym;
use crate::space::GraphSpace;

/// Largest accepted `max_i |L u_i - lambda_i u_i|`.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-8;

/// `n` log-spaced values from `lo` to `hi`, both included.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && lo.is_finite() && hi.is_finite()) || n == 0 {
        return Err(Error::Invalid(format!("bad log grid [{lo}, {hi}] with {n} points")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..n)
        .map(|i| if i == 0 { lo } else if i + 1 == n { hi } else { (a + (b - a) * i as f64 / (n - 1) as f64).exp() })
        .collect())
}

/// Default lengthscale grid: 25 values from `1e-2` to `1e2`.
pub fn default_beta_grid() -> Vec<f64> {
    log_grid(1e-2, 1e2, 25).expect("valid constants")
}

/// Eigensystem of a graph Laplacian.
#[derive(Debug, Clone)]
pub struct GraphEigen {
    /// Ascending, clamped at zero.
    pub values: DVector<f64>,
    pub vectors: DMatrix<f64>,
}

impl GraphEigen {
    pub fn new(g: &GraphSpace) -> Result<Self> {
        Self::from_laplacian(&g.laplacian())
    }

    pub fn from_laplacian(l: &DMatrix<f64>) -> Result<Self> {
        let e = eig_sym(l)?;
        let residual = (l * &e.vectors - &e.vectors * DMatrix::from_diagonal(&e.values)).amax();
        if residual > EIGEN_RESIDUAL_TOL {
            return Err(Error::Numerical(format!("Laplacian eigen-residual {residual:e} too large")));
        }
        let values = e.values.map(|v| v.max(0.0));
        Ok(Self { values, vectors: e.vectors })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `U exp(-beta Lambda) U^T`.
    pub fn heat(&self, beta: f64) -> DMatrix<f64> {
        let mut scaled = self.vectors.clone();
        for (k, mut col) in scaled.column_iter_mut().enumerate() {
            col *= (-beta * self.values[k]).exp();
        }
        let k = scaled * self.vectors.transpose();
        // exact symmetry
        (&k + k.transpose()) * 0.5
    }
}

/// `s^2 U exp(-beta Lambda) U^T` over all nodes.
#[derive(Debug, Clone)]
pub struct DiffusionKernel {
    pub beta: f64,
    pub signal_scale: f64,
    base: Arc<DMatrix<f64>>,
}

impl DiffusionKernel {
    pub fn new(eigen: &GraphEigen, beta: f64, signal_scale: f64) -> Result<Self> {
        Self::from_heat(Arc::new(eigen.heat(beta)), beta, signal_scale)
    }

    pub(crate) fn from_heat(base: Arc<DMatrix<f64>>, beta: f64, signal_scale: f64) -> Result<Self> {
        if !(beta >= 0.0 && beta.is_finite()) || !(signal_scale > 0.0 && signal_scale.is_finite()) {
            return Err(Error::Invalid(format!("bad kernel parameters beta={beta}, s2={signal_scale}")));
        }
        Ok(Self { beta, signal_scale, base })
    }

    pub fn len(&self) -> usize {
        self.base.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.base.nrows() == 0
    }

    /// Unit-signal kernel entry.
    pub(crate) fn base(&self, i: usize, j: usize) -> f64 {
        self.base[(i, j)]
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.signal_scale * self.base[(i, j)]
    }

    /// Kernel restricted to `rows x cols`.
    pub fn kernel_matrix(&self, rows: &[usize], cols: &[usize]) -> Result<DMatrix<f64>> {
        let n = self.len();
        if let Some(&bad) = rows.iter().chain(cols).find(|&&i| i >= n) {
            return Err(Error::Invalid(format!("node index {bad} out of range 0..{n}")));
        }
        Ok(DMatrix::from_fn(rows.len(), cols.len(), |r, c| self.entry(rows[r], cols[c])))
    }

    pub fn full(&self) -> DMatrix<f64> {
        &*self.base * self.signal_scale
    }
}

/// Heat matrices of one graph for every lengthscale of a grid.
#[derive(Debug, Clone)]
pub struct KernelCache {
    grid: Vec<f64>,
    heats: Vec<Arc<DMatrix<f64>>>,
}

impl KernelCache {
    pub fn new(eigen: &GraphEigen, grid: &[f64]) -> Result<Self> {
        if grid.is_empty() || grid.iter().any(|&b| !(b > 0.0 && b.is_finite())) {
            return Err(Error::Invalid("beta grid must be non-empty and positive".into()));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("beta grid must be strictly increasing".into()));
        }
        let heats = grid.par_iter().map(|&b| Arc::new(eigen.heat(b))).collect();
        Ok(Self { grid: grid.to_vec(), heats })
    }

    pub fn from_graph(g: &GraphSpace, grid: &[f64]) -> Result<Self> {
        Self::new(&GraphEigen::new(g)?, grid)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn nodes(&self) -> usize {
        self.heats[0].nrows()
    }

    pub fn kernel(&self, grid_index: usize, signal_scale: f64) -> Result<DiffusionKernel> {
        DiffusionKernel::from_heat(self.heats[grid_index].clone(), self.grid[grid_index], signal_scale)
    }
}
