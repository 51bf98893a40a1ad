//! Exact Hausdorff distance between finite point clouds in a shared
//! Euclidean space, using the early-break scan with randomized visiting order.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng;

/// `N` points of dimension `D`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    data: Vec<f64>,
    dim: usize,
}

impl PointCloud {
    pub fn new(data: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("point dimension must be positive".into()));
        }
        if data.is_empty() {
            return Err(Error::EmptyCloud);
        }
        if !data.len().is_multiple_of(dim) {
            return Err(Error::Invalid(format!(
                "{} coordinates do not split into points of dimension {dim}",
                data.len()
            )));
        }
        if data.iter().any(|c| !c.is_finite()) {
            return Err(Error::Invalid("point cloud has non-finite coordinates".into()));
        }
        Ok(Self { data, dim })
    }

    pub fn from_points<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptyCloud)?.as_ref().len();
        let mut data = Vec::with_capacity(points.len() * dim);
        for p in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(Error::Dimension { expected: dim, got: p.len() });
            }
            data.extend_from_slice(p);
        }
        Self::new(data, dim)
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// A copy with the points permuted by a seeded shuffle.
    pub fn shuffled(&self, seed: u64) -> Self {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.shuffle(&mut rng::seeded(seed));
        let mut data = Vec::with_capacity(self.data.len());
        for i in order {
            data.extend_from_slice(self.point(i));
        }
        Self { data, dim: self.dim }
    }

    /// Union of two clouds of equal dimension.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension { expected: self.dim, got: other.dim });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { data, dim: self.dim })
    }
}

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        s += d * d;
    }
    s
}

fn check_pair(a: &PointCloud, b: &PointCloud) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    if a.dim != b.dim {
        return Err(Error::Dimension { expected: a.dim, got: b.dim });
    }
    Ok(())
}

/// Early-break directed scan over clouds taken in their stored order.
///
/// Returns the squared directed distance, or stops and returns the current
/// running maximum as soon as it reaches `abandon_sq`.
pub(crate) fn directed_sq_in_order(a: &PointCloud, b: &PointCloud, abandon_sq: f64) -> f64 {
    let mut cmax = 0.0f64;
    for p in a.points() {
        let mut cmin = f64::INFINITY;
        let mut broke = false;
        for q in b.points() {
            let d = sq_dist(p, q);
            if d < cmax {
                broke = true;
                break;
            }
            if d < cmin {
                cmin = d;
            }
        }
        if !broke && cmin > cmax {
            cmax = cmin;
            if cmax >= abandon_sq {
                return cmax;
            }
        }
    }
    cmax
}

/// `max_{p in a} min_{q in b} |p - q|`.
///
/// Points of `a` (and `b`) are visited in an order shuffled by `shuffle_seed`;
/// `None` keeps the stored order. The result is the same for every seed.
pub fn directed_hausdorff(a: &PointCloud, b: &PointCloud, shuffle_seed: Option<u64>) -> Result<f64> {
    check_pair(a, b)?;
    let sq = match shuffle_seed {
        Some(seed) => directed_sq_in_order(
            &a.shuffled(seed),
            &b.shuffled(seed.wrapping_add(1)),
            f64::INFINITY,
        ),
        None => directed_sq_in_order(a, b, f64::INFINITY),
    };
    Ok(sq.sqrt())
}

/// Symmetric Hausdorff distance.
pub fn hausdorff_dist(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    const SEED: u64 = 0x5EED_4A05_D0FF;
    check_pair(a, b)?;
    let a = a.shuffled(SEED);
    let b = b.shuffled(SEED ^ 1);
    Ok(hausdorff_sq_bounded(&a, &b, f64::INFINITY).sqrt())
}

/// Squared Hausdorff distance of pre-ordered clouds; stops early once the
/// value is known to be at least `abandon_sq`.
pub(crate) fn hausdorff_sq_bounded(a: &PointCloud, b: &PointCloud, abandon_sq: f64) -> f64 {
    let ab = directed_sq_in_order(a, b, abandon_sq);
    if ab >= abandon_sq {
        return ab;
    }
    let ba = directed_sq_in_order(b, a, abandon_sq);
    ab.max(ba)
}

/// Largest pairwise Euclidean distance.
pub fn diameter(a: &PointCloud) -> f64 {
    let n = a.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let p = a.point(i);
            (i + 1..n).map(|j| sq_dist(p, a.point(j))).fold(0.0f64, f64::max)
        })
        .reduce(|| 0.0, f64::max)
        .sqrt()
}
