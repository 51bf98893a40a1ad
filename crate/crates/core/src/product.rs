//! Product-manifold signatures.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model_spaces::{ModelSpace, SpaceKind};

/// An ordered list of model-space factors. Two signatures describe the same
/// search node iff their canonical forms are equal.
#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    factors: Vec<ModelSpace>,
    canonical: bool,
}

/// One point of a product manifold: a point of each factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductPoint {
    pub parts: Vec<Vec<f64>>,
}

fn factor_order(a: &ModelSpace, b: &ModelSpace) -> std::cmp::Ordering {
    a.kind()
        .cmp(&b.kind())
        .then(a.curvature().total_cmp(&b.curvature()))
        .then(a.dim().cmp(&b.dim()))
}

impl Signature {
    pub fn new(factors: Vec<ModelSpace>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Invalid("a signature needs at least one factor".into()));
        }
        let canonical = factors.windows(2).all(|w| factor_order(&w[0], &w[1]).is_le());
        Ok(Self { factors, canonical })
    }

    /// Default-profile signature from factor kinds (dimension 2, curvature -1/0/1).
    pub fn from_kinds(kinds: &[SpaceKind]) -> Result<Self> {
        Self::new(kinds.iter().map(|&k| ModelSpace::unit(k)).collect())
    }

    /// Sorted copy, Euclidean < Hyperboloid < Hypersphere.
    pub fn canonicalize(&self) -> Self {
        let mut factors = self.factors.clone();
        factors.sort_by(factor_order);
        Self { factors, canonical: true }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn factors(&self) -> &[ModelSpace] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn kinds(&self) -> Vec<SpaceKind> {
        self.factors.iter().map(|f| f.kind()).collect()
    }

    /// Number of factors of each kind, `[E, H, S]`.
    pub fn counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for f in &self.factors {
            c[f.kind() as usize] += 1;
        }
        c
    }

    /// Sum of the factor dimensions: the length of a tangent vector.
    pub fn tangent_dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim()).sum()
    }

    /// Map a tangent vector, split into consecutive per-factor blocks, through
    /// each factor's exponential map at its origin.
    pub fn project(&self, tangent: &[f64]) -> Result<ProductPoint> {
        if tangent.len() != self.tangent_dim() {
            return Err(Error::Dimension { expected: self.tangent_dim(), got: tangent.len() });
        }
        let mut parts = Vec::with_capacity(self.len());
        let mut at = 0;
        for f in &self.factors {
            let block = &tangent[at..at + f.dim()];
            at += f.dim();
            let ambient = match f.kind() {
                SpaceKind::Euclidean => block.to_vec(),
                // tangent space at the pole (1, 0, ..): time-like entry zero
                SpaceKind::Hyperboloid => std::iter::once(0.0).chain(block.iter().copied()).collect(),
                // tangent space at the pole (.., 1): last entry zero
                SpaceKind::Hypersphere => block.iter().copied().chain(std::iter::once(0.0)).collect(),
            };
            parts.push(f.exp_map(&f.origin(), &ambient)?);
        }
        Ok(ProductPoint { parts })
    }

    fn check_conforms(&self, p: &ProductPoint) -> Result<()> {
        if p.parts.len() != self.len() {
            return Err(Error::Dimension { expected: self.len(), got: p.parts.len() });
        }
        for (f, part) in self.factors.iter().zip(&p.parts) {
            f.check_point(part)?;
        }
        Ok(())
    }

    /// `sqrt(sum_i d_i(a_i, b_i)^2)`.
    pub fn dist(&self, a: &ProductPoint, b: &ProductPoint) -> Result<f64> {
        self.check_conforms(a)?;
        self.check_conforms(b)?;
        let mut sum = 0.0;
        for ((f, x), y) in self.factors.iter().zip(&a.parts).zip(&b.parts) {
            let d = f.dist(x, y)?;
            sum += d * d;
        }
        Ok(sum.sqrt())
    }

    /// Concatenated coordinates. With `pad_euclidean`, every Euclidean part
    /// gets a trailing zero so 2-dimensional factors all contribute 3 numbers.
    pub fn flatten(&self, p: &ProductPoint, pad_euclidean: bool) -> Vec<f64> {
        let mut out = Vec::new();
        for (f, part) in self.factors.iter().zip(&p.parts) {
            out.extend_from_slice(part);
            if pad_euclidean && f.kind() == SpaceKind::Euclidean {
                out.push(0.0);
            }
        }
        out
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters: Vec<String> = self.factors.iter().map(|m| m.kind().letter().to_string()).collect();
        f.write_str(&letters.join(","))
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Parse comma-separated factor letters, e.g. `"E,H,S"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut kinds = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let mut chars = tok.chars();
            let kind = match (chars.next(), chars.next()) {
                (Some(c), None) => SpaceKind::from_letter(c),
                _ => None,
            }
            .ok_or_else(|| Error::Invalid(format!("bad factor {tok:?} in signature {s:?}")))?;
            kinds.push(kind);
        }
        Self::from_kinds(&kinds)
    }
}
