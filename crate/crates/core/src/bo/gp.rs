//! Gaussian-process regression on graph nodes and expected improvement.

use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::kernel::{DiffusionKernel, KernelCache};
use crate::error::{Error, Result};
use crate::linalg::cholesky_jittered;

/// Default observation noise variance.
pub const DEFAULT_NOISE: f64 = 1e-6;
/// Posterior standard deviations below this give zero improvement.
pub const MIN_STD: f64 = 1e-12;

/// Observations and their standardization.
#[derive(Debug, Clone)]
pub struct GpState {
    indices: Vec<usize>,
    values: Vec<f64>,
    pub noise_variance: f64,
    mean: f64,
    std: f64,
}

impl GpState {
    pub fn new(indices: Vec<usize>, values: Vec<f64>, noise_variance: f64) -> Result<Self> {
        if indices.len() != values.len() {
            return Err(Error::Dimension { expected: indices.len(), got: values.len() });
        }
        if indices.is_empty() {
            return Err(Error::Precondition("a GP state needs at least one observation".into()));
        }
        if !(noise_variance >= 0.0 && noise_variance.is_finite()) {
            return Err(Error::Invalid(format!("noise variance {noise_variance} must be >= 0")));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Invalid("observed values must be finite".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = indices.iter().find(|&&i| !seen.insert(i)) {
            return Err(Error::Invalid(format!("node {dup} observed twice")));
        }
        let t = values.len() as f64;
        let mean = values.iter().sum::<f64>() / t;
        let distinct = values.iter().any(|&v| v != values[0]);
        let std = if distinct {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / t).sqrt()
        } else {
            1.0
        };
        let std = if std > 0.0 { std } else { 1.0 };
        Ok(Self { indices, values, noise_variance, mean, std })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// `(mean, std)` used to standardize.
    pub fn standardization(&self) -> (f64, f64) {
        (self.mean, self.std)
    }

    pub fn standardized(&self) -> DVector<f64> {
        DVector::from_iterator(self.len(), self.values.iter().map(|v| (v - self.mean) / self.std))
    }

    fn unit_gram(&self, k: &DiffusionKernel) -> DMatrix<f64> {
        let t = self.len();
        DMatrix::from_fn(t, t, |a, b| k.base(self.indices[a], self.indices[b]))
    }
}

/// Per-grid-point fit of the marginal likelihood.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridFit {
    pub beta: f64,
    pub signal_scale: f64,
    pub log_marginal_likelihood: f64,
}

/// The model covariance of the standardized observations is
/// `s^2 (K_beta + noise I)`, for which `s^2 = y^T (K_beta + noise I)^-1 y / t`
/// maximizes the likelihood in closed form.
fn fit_at(cache: &KernelCache, gi: usize, state: &GpState, y: &DVector<f64>) -> Result<GridFit> {
    let k = cache.kernel(gi, 1.0)?;
    let t = state.len() as f64;
    let ch = cholesky_jittered(&state.unit_gram(&k), state.noise_variance)?;
    let alpha = ch.solve(y);
    let quad = y.dot(&alpha);
    let logdet: f64 = 2.0 * ch.l_dirty().diagonal().iter().map(|d| d.ln()).sum::<f64>();
    let s2 = quad / t;
    let lml = if s2 > 0.0 {
        -0.5 * t * (1.0 + s2.ln() + (2.0 * std::f64::consts::PI).ln()) - 0.5 * logdet
    } else {
        f64::NEG_INFINITY
    };
    Ok(GridFit { beta: cache.grid()[gi], signal_scale: s2, log_marginal_likelihood: lml })
}

/// Likelihood of every grid point, in grid order.
pub fn grid_likelihoods(cache: &KernelCache, state: &GpState) -> Result<Vec<GridFit>> {
    let y = state.standardized();
    (0..cache.grid().len()).into_par_iter().map(|gi| fit_at(cache, gi, state, &y)).collect()
}

/// Grid search for the lengthscale maximizing the marginal likelihood, with
/// the signal scale at its closed-form optimum. Ties go to the smaller
/// lengthscale; constant observations return the smallest lengthscale with
/// unit signal scale.
pub fn fit_hyperparameters(cache: &KernelCache, state: &GpState) -> Result<DiffusionKernel> {
    if state.len() < 2 {
        return Err(Error::Precondition("hyperparameter fitting needs at least 2 observations".into()));
    }
    let fits = grid_likelihoods(cache, state)?;
    let (best, fit) = select(&fits);
    if fit.signal_scale > 0.0 && fit.log_marginal_likelihood.is_finite() {
        cache.kernel(best, fit.signal_scale)
    } else {
        cache.kernel(0, 1.0)
    }
}

/// Index of the first maximum.
fn select(fits: &[GridFit]) -> (usize, GridFit) {
    let mut best = 0;
    for (i, f) in fits.iter().enumerate().skip(1) {
        if f.log_marginal_likelihood > fits[best].log_marginal_likelihood {
            best = i;
        }
    }
    (best, fits[best])
}

/// Signal scale at a fixed lengthscale, for runs with a frozen `beta`.
pub fn refit_signal(cache: &KernelCache, grid_index: usize, state: &GpState) -> Result<DiffusionKernel> {
    let fit = fit_at(cache, grid_index, state, &state.standardized())?;
    let s2 = if fit.signal_scale > 0.0 { fit.signal_scale } else { 1.0 };
    cache.kernel(grid_index, s2)
}

/// Posterior mean and standard deviation at `query`, on the scale of the
/// observed values.
pub fn gp_posterior(k: &DiffusionKernel, state: &GpState, query: &[usize]) -> Result<(Vec<f64>, Vec<f64>)> {
    let (mean, std) = state.standardization();
    let (mu, sd) = standardized_posterior(k, state, query)?;
    Ok((mu.into_iter().map(|m| m * std + mean).collect(), sd.into_iter().map(|s| s * std).collect()))
}

/// Posterior on the standardized scale.
pub(crate) fn standardized_posterior(
    k: &DiffusionKernel,
    state: &GpState,
    query: &[usize],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = k.len();
    if let Some(&bad) = query.iter().chain(state.indices()).find(|&&i| i >= n) {
        return Err(Error::Invalid(format!("node index {bad} out of range 0..{n}")));
    }
    let ch = cholesky_jittered(&state.unit_gram(k), state.noise_variance)?;
    let y = state.standardized();
    let alpha = ch.solve(&y);
    let cross = DMatrix::from_fn(state.len(), query.len(), |a, q| k.base(state.indices()[a], query[q]));
    let v = ch.solve(&cross);
    let mut mu = Vec::with_capacity(query.len());
    let mut sd = Vec::with_capacity(query.len());
    for (q, &node) in query.iter().enumerate() {
        let kq = cross.column(q);
        let m = kq.dot(&alpha);
        let var = k.signal_scale * (k.base(node, node) - kq.dot(&v.column(q)));
        mu.push(m);
        sd.push(var.max(0.0).sqrt());
    }
    Ok((mu, sd))
}

/// Standard normal distribution function.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Expected improvement below `f_best` for each `(mean, std)` pair.
pub fn expected_improvement(mean: &[f64], std: &[f64], f_best: f64) -> Result<Vec<f64>> {
    if mean.len() != std.len() {
        return Err(Error::Dimension { expected: mean.len(), got: std.len() });
    }
    if let Some(s) = std.iter().find(|&&s| s.is_nan() || s < 0.0) {
        return Err(Error::Invalid(format!("negative standard deviation {s}")));
    }
    Ok(mean
        .iter()
        .zip(std)
        .map(|(&m, &s)| {
            if s < MIN_STD {
                return 0.0;
            }
            let g = (f_best - m) / s;
            (s * (g * normal_cdf(g) + normal_pdf(g))).max(0.0)
        })
        .collect())
}
