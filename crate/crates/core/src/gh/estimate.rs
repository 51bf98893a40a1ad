//! Upper bounds on Gromov-Hausdorff distances between unit balls.
//!
//! The hyperbolic ball is embedded once into `R^6` and kept fixed. The
//! Euclidean disk (resp. the spherical cap) is placed on every choice of 2
//! (resp. 3) coordinate axes of `R^6`, optionally negated, then translated
//! along one axis at a time by offsets on a uniform grid. The smallest
//! Hausdorff distance over all placements is the estimate.

use serde::{Deserialize, Serialize};

use rayon::prelude::*;

use super::blanusa::BlanusaEmbedding;
use super::sampling::sample_ball;
use crate::error::{Error, Result};
use crate::hausdorff::{diameter, hausdorff_sq_bounded, PointCloud};
use crate::model_spaces::SpaceKind;

const AMBIENT: usize = 6;
const SHUFFLE_SEED: u64 = 0x6A09_E667_F3BC_C908;
const BATCH: usize = 256;

/// Sampling and sweep resolutions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Radial samples of the Euclidean and hyperbolic balls.
    pub res_r: usize,
    /// Angular samples of the Euclidean and hyperbolic balls.
    pub res_t: usize,
    /// Polar and azimuthal samples of the spherical cap.
    pub sphere_res: usize,
    /// Number of intervals of the offset grid; `steps + 1` offsets are tried.
    pub offset_steps: usize,
    /// Offsets range over `[-offset_range, offset_range]`.
    pub offset_range: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { res_r: 200, res_t: 200, sphere_res: 100, offset_steps: 100, offset_range: 0.5 }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.res_r < 2 || self.res_t < 2 || self.sphere_res < 2 {
            return Err(Error::Invalid("sampling resolutions must be at least 2".into()));
        }
        if self.offset_steps == 0 {
            return Err(Error::Invalid("offset steps must be positive".into()));
        }
        if !(self.offset_range >= 0.0 && self.offset_range.is_finite()) {
            return Err(Error::Invalid("offset range must be finite and non-negative".into()));
        }
        Ok(())
    }

    pub fn offsets(&self) -> Vec<f64> {
        let n = self.offset_steps;
        (0..=n)
            .map(|k| self.offset_range * (2.0 * k as f64 - n as f64) / n as f64)
            .collect()
    }
}

/// One rigid placement of the source ball in `R^6`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    /// Target axis of each source coordinate.
    pub axes: Vec<usize>,
    pub negated: bool,
    pub offset_axis: usize,
    pub offset: f64,
}

/// Result of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GhEstimate {
    pub value: f64,
    pub best: Placement,
    /// Number of placements evaluated.
    pub candidates: usize,
    /// `max(diam source, diam target)`, when computed.
    pub diameter_bound: Option<f64>,
}

/// Increasing `k`-subsets of `0..n`.
pub fn axis_choices(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn placements(source_dim: usize, with_negation: bool, offsets: &[f64]) -> Vec<Placement> {
    let signs: &[bool] = if with_negation { &[false, true] } else { &[false] };
    let mut out = Vec::new();
    for axes in axis_choices(AMBIENT, source_dim) {
        for &negated in signs {
            for offset_axis in 0..AMBIENT {
                for &offset in offsets {
                    out.push(Placement { axes: axes.clone(), negated, offset_axis, offset });
                }
            }
        }
    }
    out
}

fn place(source: &PointCloud, p: &Placement) -> PointCloud {
    let sign = if p.negated { -1.0 } else { 1.0 };
    let mut data = Vec::with_capacity(source.len() * AMBIENT);
    for q in source.points() {
        let mut row = [0.0; AMBIENT];
        for (c, &axis) in q.iter().zip(&p.axes) {
            row[axis] = sign * c;
        }
        row[p.offset_axis] += p.offset;
        data.extend_from_slice(&row);
    }
    PointCloud::new(data, AMBIENT).expect("placement of a valid cloud")
}

/// Minimum Hausdorff distance between `target` (in `R^6`) and every
/// placement of `source`.
///
/// Placements run in batches; inside a batch each evaluation may stop as soon
/// as it provably cannot beat the best value of the previous batches, so the
/// result and the reported placement do not depend on the thread schedule.
pub fn sweep(source: &PointCloud, target: &PointCloud, placements: &[Placement]) -> Result<(f64, usize)> {
    if target.dim() != AMBIENT {
        return Err(Error::Dimension { expected: AMBIENT, got: target.dim() });
    }
    if placements.is_empty() {
        return Err(Error::Invalid("no placements to evaluate".into()));
    }
    let source = source.shuffled(SHUFFLE_SEED);
    let target = target.shuffled(SHUFFLE_SEED ^ 0xFF);
    let mut best_sq = f64::INFINITY;
    let mut best_idx = 0;
    for (b, batch) in placements.chunks(BATCH).enumerate() {
        let bound = best_sq;
        let found = batch
            .par_iter()
            .enumerate()
            .map(|(i, p)| (hausdorff_sq_bounded(&place(&source, p), &target, bound), i))
            .filter(|&(sq, _)| sq < bound)
            .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        if let Some((sq, i)) = found {
            best_sq = sq;
            best_idx = b * BATCH + i;
        }
    }
    Ok((best_sq.sqrt(), best_idx))
}

fn estimate(
    source: PointCloud,
    target: &PointCloud,
    with_negation: bool,
    cfg: &SweepConfig,
    with_diameter: bool,
) -> Result<GhEstimate> {
    let all = placements(source.dim(), with_negation, &cfg.offsets());
    let (value, idx) = sweep(&source, target, &all)?;
    let diameter_bound = with_diameter.then(|| diameter(&source).max(diameter(target)));
    Ok(GhEstimate { value, best: all[idx].clone(), candidates: all.len(), diameter_bound })
}

/// Embedded hyperbolic ball at the configured resolution.
pub fn hyperbolic_cloud(emb: &BlanusaEmbedding, cfg: &SweepConfig) -> Result<PointCloud> {
    sample_ball(SpaceKind::Hyperboloid, cfg.res_r, cfg.res_t, Some(emb))
}

/// Estimate `d_GH(B_E2, B_H2)` over the 15 axis pairs of `R^6`.
pub fn estimate_gh_eh(emb: &BlanusaEmbedding, cfg: &SweepConfig, with_diameter: bool) -> Result<GhEstimate> {
    cfg.validate()?;
    let target = hyperbolic_cloud(emb, cfg)?;
    estimate_gh_eh_with(&target, cfg, with_diameter)
}

/// As [`estimate_gh_eh`] with a precomputed hyperbolic cloud.
pub fn estimate_gh_eh_with(target: &PointCloud, cfg: &SweepConfig, with_diameter: bool) -> Result<GhEstimate> {
    cfg.validate()?;
    let source = sample_ball(SpaceKind::Euclidean, cfg.res_r, cfg.res_t, None)?;
    estimate(source, target, false, cfg, with_diameter)
}

/// Estimate `d_GH(B_S2, B_H2)` over the 20 axis triples of `R^6`, each with
/// the cap and its negation.
pub fn estimate_gh_sh(emb: &BlanusaEmbedding, cfg: &SweepConfig, with_diameter: bool) -> Result<GhEstimate> {
    cfg.validate()?;
    let target = hyperbolic_cloud(emb, cfg)?;
    estimate_gh_sh_with(&target, cfg, with_diameter)
}

/// As [`estimate_gh_sh`] with a precomputed hyperbolic cloud.
pub fn estimate_gh_sh_with(target: &PointCloud, cfg: &SweepConfig, with_diameter: bool) -> Result<GhEstimate> {
    cfg.validate()?;
    let source = sample_ball(SpaceKind::Hypersphere, cfg.sphere_res, cfg.sphere_res, None)?;
    estimate(source, target, true, cfg, with_diameter)
}

/// Closed-form bounds on `d_GH(B_E, B_S)`: the one-sided distance of the cap
/// to the tangent-parallel disk through its midpoint height, and the minimax
/// height of the disk.
pub fn analytic_es_bounds() -> (f64, f64) {
    let (s, c) = 1f64.sin_cos();
    let lower = (1.0 - c) / 2.0;
    let upper = ((1.0 - s).powi(2) + (1.0 - c).powi(2)) / (2.0 - 2.0 * c);
    (lower, upper)
}
