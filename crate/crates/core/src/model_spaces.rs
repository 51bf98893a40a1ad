//! Constant-curvature model spaces and the hyperbolic coordinate charts.
//!
//! Points live in ambient coordinates: `d` numbers for the Euclidean plane,
//! `d + 1` numbers for the hyperboloid and the hypersphere. On the hyperboloid
//! the time-like coordinate comes first, so the pole of the unit hyperboloid
//! is `(1, 0, 0)` and `<x, x>_L = 1/K`.
//!
//! The hyperbolic chart chain (hyperboloid -> Poincare disk -> upper half
//! plane -> `(R^2, dx^2 + e^{2x} dy^2)`) works on the chart ordering where the
//! sheet coordinate is last; [`sheet_last`] converts from the ambient ordering.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the point invariants (`<x,x> = 1/K`), scaled by `max(1, |x|^2)`.
pub const POINT_TOL: f64 = 1e-9;
/// Tolerance on tangent-space membership.
pub const TANGENT_TOL: f64 = 1e-8;
/// Arguments of `arccosh`/`arccos` this far outside the legal domain are clamped.
pub const CLAMP_TOL: f64 = 1e-9;
const SERIES_CUTOFF: f64 = 1e-6;

/// The three kinds of model space. The derived order (E < H < S) is the
/// canonical factor order of product signatures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SpaceKind {
    Euclidean,
    Hyperboloid,
    Hypersphere,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 3] = [SpaceKind::Euclidean, SpaceKind::Hyperboloid, SpaceKind::Hypersphere];

    pub fn letter(self) -> char {
        match self {
            SpaceKind::Euclidean => 'E',
            SpaceKind::Hyperboloid => 'H',
            SpaceKind::Hypersphere => 'S',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'E' => Some(SpaceKind::Euclidean),
            'H' => Some(SpaceKind::Hyperboloid),
            'S' => Some(SpaceKind::Hypersphere),
            _ => None,
        }
    }
}

/// A model space of constant curvature `curvature` and intrinsic dimension `dim`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpace {
    kind: SpaceKind,
    curvature: f64,
    dim: usize,
}

impl ModelSpace {
    pub fn new(kind: SpaceKind, curvature: f64, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Invalid("model space dimension must be positive".into()));
        }
        let ok = match kind {
            SpaceKind::Euclidean => curvature == 0.0,
            SpaceKind::Hyperboloid => curvature < 0.0 && curvature.is_finite(),
            SpaceKind::Hypersphere => curvature > 0.0 && curvature.is_finite(),
        };
        if !ok {
            return Err(Error::Invalid(format!(
                "curvature {curvature} is not valid for {kind:?}"
            )));
        }
        Ok(Self { kind, curvature, dim })
    }

    /// The default 2-dimensional space of this kind with curvature in {-1, 0, 1}.
    pub fn unit(kind: SpaceKind) -> Self {
        let curvature = match kind {
            SpaceKind::Euclidean => 0.0,
            SpaceKind::Hyperboloid => -1.0,
            SpaceKind::Hypersphere => 1.0,
        };
        Self { kind, curvature, dim: 2 }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn curvature(&self) -> f64 {
        self.curvature
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of ambient coordinates of a point.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            SpaceKind::Euclidean => self.dim,
            _ => self.dim + 1,
        }
    }

    /// Base point used for projections: the Euclidean origin, the hyperboloid
    /// pole `(1/sqrt(-K), 0, ..)` or the sphere pole `(0, .., 1/sqrt(K))`.
    pub fn origin(&self) -> Vec<f64> {
        let mut o = vec![0.0; self.ambient_dim()];
        match self.kind {
            SpaceKind::Euclidean => {}
            SpaceKind::Hyperboloid => o[0] = 1.0 / (-self.curvature).sqrt(),
            SpaceKind::Hypersphere => *o.last_mut().unwrap() = 1.0 / self.curvature.sqrt(),
        }
        o
    }

    fn check_len(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.ambient_dim() {
            return Err(Error::Dimension { expected: self.ambient_dim(), got: v.len() });
        }
        Ok(())
    }

    /// Check that `x` lies on this space.
    pub fn check_point(&self, x: &[f64]) -> Result<()> {
        self.check_len(x)?;
        if x.iter().any(|c| !c.is_finite()) {
            return Err(Error::Precondition("point has non-finite coordinates".into()));
        }
        let scale = 1.0f64.max(euclid_dot(x, x));
        match self.kind {
            SpaceKind::Euclidean => Ok(()),
            SpaceKind::Hyperboloid => {
                let q = lorentz_inner(x, x)?;
                if (q - 1.0 / self.curvature).abs() > POINT_TOL * scale || x[0] <= 0.0 {
                    return Err(Error::Precondition(format!(
                        "point not on the upper hyperboloid sheet (<x,x>_L = {q})"
                    )));
                }
                Ok(())
            }
            SpaceKind::Hypersphere => {
                let q = euclid_dot(x, x);
                if (q - 1.0 / self.curvature).abs() > POINT_TOL * scale {
                    return Err(Error::Precondition(format!(
                        "point not on the hypersphere (<x,x> = {q})"
                    )));
                }
                Ok(())
            }
        }
    }

    /// Exponential map at `base` applied to `tangent`.
    pub fn exp_map(&self, base: &[f64], tangent: &[f64]) -> Result<Vec<f64>> {
        self.check_point(base)?;
        self.check_len(tangent)?;
        match self.kind {
            SpaceKind::Euclidean => Ok(base.iter().zip(tangent).map(|(b, t)| b + t).collect()),
            SpaceKind::Hyperboloid => {
                let along = lorentz_inner(base, tangent)?;
                if along.abs() > TANGENT_TOL * 1.0f64.max(norm(base) * norm(tangent)) {
                    return Err(Error::Precondition(format!(
                        "tangent not Lorentz-orthogonal to base (<b,v>_L = {along})"
                    )));
                }
                let n = lorentz_inner(tangent, tangent)?.max(0.0).sqrt();
                let r = (-self.curvature).sqrt() * n;
                let ch = r.cosh();
                // sinh(sqrt(-K)|v|) / (sqrt(-K)|v|)
                let sc = sinhc(r);
                Ok(base.iter().zip(tangent).map(|(b, v)| ch * b + sc * v).collect())
            }
            SpaceKind::Hypersphere => {
                let along = euclid_dot(base, tangent);
                if along.abs() > TANGENT_TOL * 1.0f64.max(norm(base) * norm(tangent)) {
                    return Err(Error::Precondition(format!(
                        "tangent not orthogonal to base (<b,v> = {along})"
                    )));
                }
                let r = self.curvature.sqrt() * norm(tangent);
                let c = r.cos();
                let sc = sinc(r);
                Ok(base.iter().zip(tangent).map(|(b, v)| c * b + sc * v).collect())
            }
        }
    }

    /// Geodesic distance between two points of this space.
    pub fn dist(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(match self.kind {
            SpaceKind::Euclidean => euclid_dist(x, y),
            SpaceKind::Hyperboloid => {
                let arg = self.curvature * lorentz_inner(x, y)?;
                if arg < 1.0 - CLAMP_TOL * arg.abs().max(1.0) {
                    return Err(Error::Numerical(format!("arccosh argument {arg} below 1")));
                }
                arg.max(1.0).acosh() / (-self.curvature).sqrt()
            }
            SpaceKind::Hypersphere => {
                let arg = self.curvature * euclid_dot(x, y);
                if arg.abs() > 1.0 + CLAMP_TOL {
                    return Err(Error::Numerical(format!("arccos argument {arg} outside [-1, 1]")));
                }
                arg.clamp(-1.0, 1.0).acos() / self.curvature.sqrt()
            }
        })
    }
}

/// Minkowski inner product `-x1 y1 + sum_{j>=2} xj yj`.
pub fn lorentz_inner(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Dimension { expected: x.len(), got: y.len() });
    }
    if x.len() < 2 {
        return Err(Error::Dimension { expected: 2, got: x.len() });
    }
    Ok(-x[0] * y[0] + x[1..].iter().zip(&y[1..]).map(|(a, b)| a * b).sum::<f64>())
}

pub(crate) fn euclid_dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    euclid_dot(x, x).sqrt()
}

pub(crate) fn euclid_dist(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// `sinh(r) / r`, with the series `1 + r^2/6 + r^4/120` near zero.
pub fn sinhc(r: f64) -> f64 {
    if r.abs() < SERIES_CUTOFF {
        let r2 = r * r;
        1.0 + r2 / 6.0 + r2 * r2 / 120.0
    } else {
        r.sinh() / r
    }
}

/// `sin(r) / r`, with the series `1 - r^2/6 + r^4/120` near zero.
pub fn sinc(r: f64) -> f64 {
    if r.abs() < SERIES_CUTOFF {
        let r2 = r * r;
        1.0 - r2 / 6.0 + r2 * r2 / 120.0
    } else {
        r.sin() / r
    }
}

/// Reorder an ambient hyperboloid point `(t, x, y)` into chart order `(x, y, t)`.
pub fn sheet_last(p: &[f64; 3]) -> [f64; 3] {
    [p[1], p[2], p[0]]
}

/// Hyperbolic stereographic projection `(x, y, z) -> (x/(1+z), y/(1+z))`,
/// `z` being the sheet coordinate.
pub fn hyperboloid_to_poincare(p: [f64; 3]) -> Result<[f64; 2]> {
    let [x, y, z] = p;
    if z <= -1.0 {
        return Err(Error::Domain(format!("sheet coordinate {z} <= -1")));
    }
    Ok([x / (1.0 + z), y / (1.0 + z)])
}

/// Mobius map from the Poincare disk to the upper half plane.
pub fn poincare_to_uhp(p: [f64; 2]) -> Result<[f64; 2]> {
    let [x, y] = p;
    let r2 = x * x + y * y;
    if r2 >= 1.0 {
        return Err(Error::Domain(format!("point of norm {} outside the unit disk", r2.sqrt())));
    }
    let den = (x - 1.0) * (x - 1.0) + y * y;
    Ok([-2.0 * y / den, (1.0 - r2) / den])
}

/// Upper half plane to `(R^2, g_-1)`: `(x, y) -> (-log y, x)`.
pub fn uhp_to_gminus1(p: [f64; 2]) -> Result<[f64; 2]> {
    let [x, y] = p;
    if y <= 0.0 {
        return Err(Error::Domain(format!("upper half plane needs y > 0, got {y}")));
    }
    Ok([-y.ln(), x])
}

/// Inverse of [`uhp_to_gminus1`]: `(x, y) -> (y, e^{-x})`.
pub fn gminus1_to_uhp(p: [f64; 2]) -> [f64; 2] {
    [p[1], (-p[0]).exp()]
}

/// Exponential map at the origin of `(R^2, g_-1)`, taking a tangent vector at
/// the hyperboloid pole through the chart chain.
pub fn exp0_gminus1(v: [f64; 2]) -> [f64; 2] {
    let r = (v[0] * v[0] + v[1] * v[1]).sqrt();
    if r == 0.0 {
        return [0.0, 0.0];
    }
    let s = sinhc(r);
    let on_sheet = [v[0] * s, v[1] * s, r.cosh()];
    // The chain is total on the upper sheet: z >= 1 and the disk image has norm < 1.
    let [x, y] = hyperboloid_to_poincare(on_sheet).expect("upper sheet");
    // -log of the half-plane height, written with ln_1p so that short
    // vectors keep full relative precision.
    let r2 = x * x + y * y;
    let den = 1.0 - 2.0 * x + r2;
    [(r2 - 2.0 * x).ln_1p() - (-r2).ln_1p(), -2.0 * y / den]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn lorentz_examples() {
        assert_eq!(lorentz_inner(&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap(), -1.0);
        assert_eq!(lorentz_inner(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap(), 0.0);
        assert_eq!(lorentz_inner(&[2.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).unwrap(), 3.0);
        assert!(matches!(lorentz_inner(&[1.0, 0.0], &[1.0, 0.0, 0.0]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn exp_examples() {
        let e = ModelSpace::unit(SpaceKind::Euclidean);
        assert_eq!(e.exp_map(&[1.0, 2.0], &[3.0, 4.0]).unwrap(), vec![4.0, 6.0]);

        let t = 0.7f64;
        let h = ModelSpace::unit(SpaceKind::Hyperboloid);
        let p = h.exp_map(&[1.0, 0.0, 0.0], &[0.0, t, 0.0]).unwrap();
        assert_abs_diff_eq!(p[0], t.cosh(), epsilon = 1e-14);
        assert_abs_diff_eq!(p[1], t.sinh(), epsilon = 1e-14);
        assert_eq!(p[2], 0.0);

        let t = 0.5f64;
        let s = ModelSpace::unit(SpaceKind::Hypersphere);
        let p = s.exp_map(&[0.0, 0.0, 1.0], &[t, 0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(p[0], t.sin(), epsilon = 1e-14);
        assert_abs_diff_eq!(p[2], t.cos(), epsilon = 1e-14);
    }

    #[test]
    fn zero_tangent_is_identity() {
        for kind in SpaceKind::ALL {
            let m = ModelSpace::unit(kind);
            let o = m.origin();
            let zero = vec![0.0; m.ambient_dim()];
            assert_eq!(m.exp_map(&o, &zero).unwrap(), o);
        }
    }

    #[test]
    fn exp_rejects_non_tangent() {
        let h = ModelSpace::unit(SpaceKind::Hyperboloid);
        assert!(matches!(
            h.exp_map(&[1.0, 0.0, 0.0], &[0.3, 0.0, 0.0]),
            Err(Error::Precondition(_))
        ));
        let s = ModelSpace::unit(SpaceKind::Hypersphere);
        assert!(matches!(
            s.exp_map(&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.2]),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn dist_examples() {
        let e = ModelSpace::unit(SpaceKind::Euclidean);
        assert_eq!(e.dist(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 5.0);
        let h = ModelSpace::unit(SpaceKind::Hyperboloid);
        let q = [0.7f64.cosh(), 0.7f64.sinh(), 0.0];
        assert_abs_diff_eq!(h.dist(&[1.0, 0.0, 0.0], &q).unwrap(), 0.7, epsilon = 1e-12);
        let s = ModelSpace::unit(SpaceKind::Hypersphere);
        let q = [0.5f64.sin(), 0.0, 0.5f64.cos()];
        assert_abs_diff_eq!(s.dist(&[0.0, 0.0, 1.0], &q).unwrap(), 0.5, epsilon = 1e-12);
        assert_eq!(h.dist(&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn dist_rejects_off_manifold() {
        let h = ModelSpace::unit(SpaceKind::Hyperboloid);
        assert!(h.dist(&[1.0, 0.5, 0.0], &[1.0, 0.0, 0.0]).is_err());
        // lower sheet
        assert!(h.dist(&[-1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn curvature_kind_invariant() {
        assert!(ModelSpace::new(SpaceKind::Euclidean, 1.0, 2).is_err());
        assert!(ModelSpace::new(SpaceKind::Hyperboloid, 0.5, 2).is_err());
        assert!(ModelSpace::new(SpaceKind::Hypersphere, -1.0, 2).is_err());
        assert!(ModelSpace::new(SpaceKind::Hypersphere, 4.0, 3).is_ok());
    }

    #[test]
    fn general_curvature_round_trip() {
        let h = ModelSpace::new(SpaceKind::Hyperboloid, -4.0, 2).unwrap();
        let o = h.origin();
        let p = h.exp_map(&o, &[0.0, 0.3, -0.2]).unwrap();
        h.check_point(&p).unwrap();
        assert_abs_diff_eq!(h.dist(&o, &p).unwrap(), (0.13f64).sqrt(), epsilon = 1e-12);
        let s = ModelSpace::new(SpaceKind::Hypersphere, 0.25, 2).unwrap();
        let o = s.origin();
        let p = s.exp_map(&o, &[0.4, 0.1, 0.0]).unwrap();
        assert_abs_diff_eq!(s.dist(&o, &p).unwrap(), (0.17f64).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn chart_examples() {
        assert_eq!(hyperboloid_to_poincare([0.0, 0.0, 1.0]).unwrap(), [0.0, 0.0]);
        let p = hyperboloid_to_poincare([1f64.sinh(), 0.0, 1f64.cosh()]).unwrap();
        assert_abs_diff_eq!(p[0], 0.462117157, epsilon = 1e-9);
        assert!(hyperboloid_to_poincare([0.0, 0.0, -1.0]).is_err());

        assert_eq!(poincare_to_uhp([0.0, 0.0]).unwrap(), [0.0, 1.0]);
        let q = poincare_to_uhp([0.5, 0.0]).unwrap();
        assert_abs_diff_eq!(q[0], 0.0);
        assert_abs_diff_eq!(q[1], 3.0, epsilon = 1e-15);
        assert!(poincare_to_uhp([0.6, 0.8]).is_err());

        assert_eq!(uhp_to_gminus1([0.0, 1.0]).unwrap(), [0.0, 0.0]);
        let g = uhp_to_gminus1([2.0, std::f64::consts::E]).unwrap();
        assert_abs_diff_eq!(g[0], -1.0, epsilon = 1e-15);
        assert_eq!(g[1], 2.0);
        assert!(uhp_to_gminus1([0.0, 0.0]).is_err());
    }

    #[test]
    fn uhp_inverse_round_trip() {
        for &(x, y) in &[(0.3, 2.0), (-1.5, 0.01), (4.0, 17.0)] {
            let back = uhp_to_gminus1(gminus1_to_uhp([x, y])).unwrap();
            assert_abs_diff_eq!(back[0], x, epsilon = 1e-12);
            assert_abs_diff_eq!(back[1], y, epsilon = 1e-12);
        }
    }

    #[test]
    fn exp0_chain_is_stepwise_composition() {
        assert_eq!(exp0_gminus1([0.0, 0.0]), [0.0, 0.0]);
        let v = [0.5f64, 0.0];
        let sheet = [v[0].sinh(), 0.0, v[0].cosh()];
        let stepwise =
            uhp_to_gminus1(poincare_to_uhp(hyperboloid_to_poincare(sheet).unwrap()).unwrap()).unwrap();
        let chained = exp0_gminus1(v);
        assert_abs_diff_eq!(chained[0], stepwise[0], epsilon = 1e-14);
        assert_abs_diff_eq!(chained[1], stepwise[1], epsilon = 1e-14);
        assert_abs_diff_eq!(chained[0], -0.5, epsilon = 1e-14);
    }

    #[test]
    fn exp0_tiny_vector_uses_series() {
        let p = exp0_gminus1([1e-9, 0.0]);
        assert_abs_diff_eq!(p[0], -1e-9, epsilon = 1e-22);
    }
}
