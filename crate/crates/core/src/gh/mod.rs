//! Gromov-Hausdorff estimation between the unit balls of the model spaces.

pub mod blanusa;
pub mod estimate;
pub mod sampling;
pub mod table;

pub use blanusa::{chi, BlanusaEmbedding};
pub use estimate::{
    analytic_es_bounds, estimate_gh_eh, estimate_gh_eh_with, estimate_gh_sh, estimate_gh_sh_with,
    hyperbolic_cloud, GhEstimate, Placement, SweepConfig,
};
pub use sampling::sample_ball;
pub use table::{GhTable, KindPair, Provenance, TableMode};

/// Max relative Frobenius deviation of the pullback metric from
/// `diag(1, e^{2x})`, and whether every sampled pullback was positive
/// definite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryReport {
    pub samples: usize,
    pub max_relative_deviation: f64,
    pub all_positive_definite: bool,
}

/// Probe how close the embedding is to an isometry at `samples` seeded
/// points of norm at most 1 in `(R^2, g_-1)` coordinates.
pub fn isometry_diagnostic(emb: &BlanusaEmbedding, samples: usize, seed: u64) -> IsometryReport {
    use rand::Rng;
    let mut rng = crate::rng::seeded(seed);
    let mut worst = 0.0f64;
    let mut pd = true;
    for _ in 0..samples {
        let (p, x) = loop {
            let x: f64 = rng.random_range(-1.0..=1.0);
            let y: f64 = rng.random_range(-1.0..=1.0);
            if x * x + y * y <= 1.0 {
                break ([x, y], x);
            }
        };
        let g = emb.pullback_metric(p, 1e-5);
        let sym = (g[0][1] - g[1][0]).abs() <= 1e-12 * (1.0 + g[0][1].abs());
        let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        pd &= sym && g[0][0] > 0.0 && det > 0.0;
        let want = [[1.0, 0.0], [0.0, (2.0 * x).exp()]];
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                num += (g[i][j] - want[i][j]).powi(2);
                den += want[i][j].powi(2);
            }
        }
        worst = worst.max((num / den).sqrt());
    }
    IsometryReport { samples, max_relative_deviation: worst, all_positive_definite: pd }
}
