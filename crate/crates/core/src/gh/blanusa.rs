//! Explicit isometric embedding of the hyperbolic plane into `E^6`.
//!
//! The map works on the chart `(R^2, dx^2 + e^{2x} dy^2)`. It is built from
//! the bump function `chi(t) = sin(pi t) exp(-1 / sin^2(pi t))`, the two
//! partition functions `psi_1(x)^2 + psi_2(x)^2 = 1` obtained from its running
//! integral, and the winding constant `c`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{cumulative, simpson, simpson_panel};

/// Entries of the running-integral table per unit length.
const TABLE_DENSITY: usize = 20_000;
/// Largest relative change of `A` accepted when the resolution doubles.
const CONVERGENCE_TOL: f64 = 1e-5;

/// `sin(pi t) exp(-sin(pi t)^-2)`, extended by zero at the integers.
pub fn chi(t: f64) -> f64 {
    if (t - t.round()).abs() < 1e-12 {
        return 0.0;
    }
    let s = (std::f64::consts::PI * t).sin();
    s * (-1.0 / (s * s)).exp()
}

/// Precomputed constants of the embedding together with the integral table
/// used to evaluate `psi_1` and `psi_2`.
#[derive(Debug, Clone)]
pub struct BlanusaEmbedding {
    /// Integral of `chi` over `[0, 1]`.
    pub a: f64,
    pub g1: f64,
    pub g2: f64,
    /// `2 max(g1, g2)`.
    pub c: f64,
    /// `(g1^2 + g2^2) / c^2`.
    pub eps: f64,
    pub quadrature_res: usize,
    pub grid_step: f64,
    table: Vec<f64>,
    table_step: f64,
}

impl BlanusaEmbedding {
    /// Compute `A` with composite Simpson on `quadrature_res` panels and
    /// `G1`, `G2` as the largest central difference of `sinh(x) psi_i(x)`
    /// over `[-2, 2]` with step `grid_step`.
    pub fn compute(quadrature_res: usize, grid_step: f64) -> Result<Self> {
        if quadrature_res < 1000 {
            return Err(Error::Invalid(format!(
                "quadrature resolution {quadrature_res} below the minimum of 1000"
            )));
        }
        if !(grid_step > 0.0 && grid_step <= 1e-4) {
            return Err(Error::Invalid(format!("derivative grid step {grid_step} outside (0, 1e-4]")));
        }
        let a = simpson(chi, 0.0, 1.0, quadrature_res);
        let refined = simpson(chi, 0.0, 1.0, 2 * quadrature_res);
        if ((refined - a) / refined).abs() > CONVERGENCE_TOL {
            return Err(Error::Numerical(format!(
                "integral of chi did not converge: {a} vs {refined} on refinement"
            )));
        }

        // The running integral has period 2 (chi(t + 1) = -chi(t)), so one
        // period is enough.
        let intervals = 2 * TABLE_DENSITY.max(quadrature_res);
        let table = cumulative(chi, 0.0, 2.0, intervals);
        let table_step = 2.0 / intervals as f64;

        let mut emb = Self {
            a,
            g1: 0.0,
            g2: 0.0,
            c: 0.0,
            eps: 0.0,
            quadrature_res,
            grid_step,
            table,
            table_step,
        };

        let (g1, g2) = emb.derivative_bounds(grid_step);
        emb.g1 = g1;
        emb.g2 = g2;
        emb.c = 2.0 * g1.max(g2);
        emb.eps = (g1 * g1 + g2 * g2) / (emb.c * emb.c);
        Ok(emb)
    }

    fn derivative_bounds(&self, h: f64) -> (f64, f64) {
        let n = (4.0 / h).round() as usize;
        let step = 4.0 / n as f64;
        (0..=n)
            .into_par_iter()
            .map(|k| {
                let x = -2.0 + k as f64 * step;
                let (lo, hi) = (x - step, x + step);
                let d1 = (lo.sinh() * self.psi1(lo) - hi.sinh() * self.psi1(hi)).abs() / (2.0 * step);
                let d2 = (lo.sinh() * self.psi2(lo) - hi.sinh() * self.psi2(hi)).abs() / (2.0 * step);
                (d1, d2)
            })
            .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)))
    }

    /// Integral of `chi` from 0 to `s`.
    pub fn running_integral(&self, s: f64) -> f64 {
        let r = s.rem_euclid(2.0);
        let k = ((r / self.table_step) as usize).min(self.table.len() - 2);
        let lo = k as f64 * self.table_step;
        self.table[k] + simpson_panel(chi, lo, r)
    }

    pub fn psi1(&self, x: f64) -> f64 {
        (self.running_integral(1.0 + x) / self.a).max(0.0).sqrt()
    }

    pub fn psi2(&self, x: f64) -> f64 {
        (self.running_integral(x) / self.a).max(0.0).sqrt()
    }

    /// `psi(x, y) = (asinh(y e^x), log sqrt(e^{-2x} + y^2))`.
    pub fn psi(x: f64, y: f64) -> [f64; 2] {
        [(y * x.exp()).asinh(), 0.5 * ((-2.0 * x).exp() + y * y).ln()]
    }

    /// The helix component `h(u, w)` in `R^4`.
    pub fn helix(&self, u: f64, w: f64) -> [f64; 4] {
        let s = u.sinh() / self.c;
        let (sin, cos) = (self.c * w).sin_cos();
        let p1 = self.psi1(u);
        let p2 = self.psi2(u);
        [s * p1 * cos, s * p1 * sin, s * p2 * cos, s * p2 * sin]
    }

    /// Image of a point of `(R^2, g_-1)` in `R^6`.
    ///
    /// The first coordinate integrates `sqrt(1 - eps^2)` with `eps` held at
    /// its constant value, giving `sqrt(1 - eps^2) asinh(y e^x)`.
    pub fn map(&self, p: [f64; 2]) -> [f64; 6] {
        let [u, w] = Self::psi(p[0], p[1]);
        let h = self.helix(u, w);
        [(1.0 - self.eps * self.eps).sqrt() * u, w, h[0], h[1], h[2], h[3]]
    }

    /// Pullback `J^T J` of the Euclidean metric through [`Self::map`], with a
    /// central-difference Jacobian of step `step`.
    pub fn pullback_metric(&self, p: [f64; 2], step: f64) -> [[f64; 2]; 2] {
        let mut jac = [[0.0; 2]; 6];
        for axis in 0..2 {
            let mut lo = p;
            let mut hi = p;
            lo[axis] -= step;
            hi[axis] += step;
            let (f_lo, f_hi) = (self.map(lo), self.map(hi));
            for r in 0..6 {
                jac[r][axis] = (f_hi[r] - f_lo[r]) / (2.0 * step);
            }
        }
        let mut g = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                g[i][j] = (0..6).map(|r| jac[r][i] * jac[r][j]).sum();
            }
        }
        g
    }
}
