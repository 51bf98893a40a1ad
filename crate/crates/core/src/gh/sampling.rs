//! Polar-grid discretizations of the unit balls.

use std::f64::consts::TAU;

use rayon::prelude::*;

use super::blanusa::BlanusaEmbedding;
use crate::error::{Error, Result};
use crate::hausdorff::PointCloud;
use crate::model_spaces::{exp0_gminus1, SpaceKind};

/// Radial range used for the hyperbolic ball; the outer shell is trimmed to
/// stay clear of the numerically unstable boundary.
pub const HYPERBOLIC_RADII: (f64, f64) = (1e-8, 0.97);

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(move |i| if i + 1 == n { hi } else { lo + i as f64 * step })
}

fn angles(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| TAU * j as f64 / n as f64)
}

/// Grid of `res_r x res_t` tangent vectors `(r cos t, r sin t)` with
/// `r` in `[lo, hi]` (endpoints included) and `t` in `[0, 2 pi)`.
pub fn polar_grid(lo: f64, hi: f64, res_r: usize, res_t: usize) -> Vec<[f64; 2]> {
    linspace(lo, hi, res_r)
        .flat_map(|r| angles(res_t).map(move |t| [r * t.cos(), r * t.sin()]))
        .collect()
}

/// Unit ball of `E^2` (dimension 2), the unit-radius cap of `S^2` around the
/// north pole (dimension 3), or the image of the trimmed hyperbolic ball in
/// `R^6` (dimension 6). For the sphere `res_r` counts polar angles `beta` and
/// `res_t` azimuths `alpha`.
pub fn sample_ball(
    kind: SpaceKind,
    res_r: usize,
    res_t: usize,
    emb: Option<&BlanusaEmbedding>,
) -> Result<PointCloud> {
    if res_r < 2 || res_t < 2 {
        return Err(Error::Invalid(format!(
            "ball resolutions must be at least 2, got {res_r} x {res_t}"
        )));
    }
    match kind {
        SpaceKind::Euclidean => {
            let pts = polar_grid(0.0, 1.0, res_r, res_t);
            PointCloud::new(pts.into_iter().flatten().collect(), 2)
        }
        SpaceKind::Hypersphere => {
            let data: Vec<f64> = linspace(0.0, 1.0, res_r)
                .flat_map(|beta| {
                    angles(res_t).flat_map(move |alpha| {
                        [beta.sin() * alpha.cos(), beta.sin() * alpha.sin(), beta.cos()]
                    })
                })
                .collect();
            PointCloud::new(data, 3)
        }
        SpaceKind::Hyperboloid => {
            let emb = emb.ok_or_else(|| {
                Error::Precondition("hyperbolic sampling needs the embedding constants".into())
            })?;
            let (lo, hi) = HYPERBOLIC_RADII;
            let grid = polar_grid(lo, hi, res_r, res_t);
            let data: Vec<f64> = grid
                .par_iter()
                .flat_map_iter(|&v| emb.map(exp0_gminus1(v)))
                .collect();
            PointCloud::new(data, 6)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_spaces::{euclid_dist, ModelSpace};

    #[test]
    fn euclidean_ball_inside_unit_disk() {
        let c = sample_ball(SpaceKind::Euclidean, 20, 30, None).unwrap();
        assert_eq!(c.len(), 600);
        assert!(c.points().all(|p| (p[0] * p[0] + p[1] * p[1]).sqrt() <= 1.0 + 1e-15));
    }

    #[test]
    fn sphere_cap_on_unit_sphere() {
        let c = sample_ball(SpaceKind::Hypersphere, 10, 12, None).unwrap();
        let s = ModelSpace::unit(SpaceKind::Hypersphere);
        for p in c.points() {
            let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
            assert!((n - 1.0).abs() < 1e-12);
            assert!(s.dist(&[0.0, 0.0, 1.0], p).unwrap() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn hyperbolic_needs_constants() {
        assert!(sample_ball(SpaceKind::Hyperboloid, 5, 5, None).is_err());
        assert!(sample_ball(SpaceKind::Euclidean, 1, 5, None).is_err());
    }

    #[test]
    fn hyperbolic_cloud_shape() {
        let emb = BlanusaEmbedding::compute(1000, 1e-4).unwrap();
        let c = sample_ball(SpaceKind::Hyperboloid, 7, 9, Some(&emb)).unwrap();
        assert_eq!(c.len(), 63);
        assert_eq!(c.dim(), 6);
        assert!(c.as_slice().iter().all(|v| v.is_finite()));
        // The centre of the ball maps next to the origin of R^6.
        assert!(euclid_dist(c.point(0), &[0.0; 6]) < 1e-6);
    }
}
