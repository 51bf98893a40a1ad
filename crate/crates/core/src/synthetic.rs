//! Synthetic objectives: a frozen random network decodes the projections of
//! one latent vector onto every candidate product manifold, and each node is
//! scored by its distance to the ground-truth decoding.

use std::collections::BTreeMap;
use std::path::Path;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::product::Signature;
use crate::rng::derived;

/// Hidden widths of the decoder.
pub const HIDDEN: [usize; 3] = [100, 100, 100];
/// Output width of the decoder.
pub const OUTPUT: usize = 5;
/// Non-truth values at or below this are reported as collisions.
pub const COLLISION_TOL: f64 = 1e-12;

const NET_STREAM: u64 = 0x6E65_7477;
const LATENT_STREAM: u64 = 0x6C61_7465;

pub fn elu(z: f64) -> f64 {
    if z >= 0.0 {
        z
    } else {
        z.exp_m1()
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Layer {
    inputs: usize,
    outputs: usize,
    /// Row-major `outputs x inputs`.
    weights: Vec<f64>,
    biases: Vec<f64>,
}

/// Fully connected network with an ELU after every layer.
#[derive(Debug, Clone, PartialEq)]
pub struct FrozenMlp {
    layers: Vec<Layer>,
}

impl FrozenMlp {
    /// Widths `[input_dim, 100, 100, 100, 5]`, weights and biases uniform on
    /// `(-1/sqrt(fan_in), 1/sqrt(fan_in))`.
    pub fn new(input_dim: usize, seed: u64) -> Result<Self> {
        let mut widths = vec![input_dim];
        widths.extend(HIDDEN);
        widths.push(OUTPUT);
        Self::with_widths(&widths, seed)
    }

    pub fn with_widths(widths: &[usize], seed: u64) -> Result<Self> {
        if widths.len() < 2 || widths.contains(&0) {
            return Err(Error::Invalid(format!("bad layer widths {widths:?}")));
        }
        let mut rng = derived(seed, NET_STREAM);
        let layers = widths
            .windows(2)
            .map(|w| {
                let (inputs, outputs) = (w[0], w[1]);
                let bound = 1.0 / (inputs as f64).sqrt();
                let mut draw = || rng.random_range(-bound..bound);
                let weights = (0..inputs * outputs).map(|_| draw()).collect();
                let biases = (0..outputs).map(|_| draw()).collect();
                Layer { inputs, outputs, weights, biases }
            })
            .collect();
        Ok(Self { layers })
    }

    /// Network with every weight and bias zero.
    pub fn zeros(widths: &[usize]) -> Result<Self> {
        let mut net = Self::with_widths(widths, 0)?;
        for l in &mut net.layers {
            l.weights.iter_mut().for_each(|w| *w = 0.0);
            l.biases.iter_mut().for_each(|b| *b = 0.0);
        }
        Ok(net)
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].inputs
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().expect("at least one layer").outputs
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.input_dim() {
            return Err(Error::Dimension { expected: self.input_dim(), got: x.len() });
        }
        let mut h = x.to_vec();
        for l in &self.layers {
            h = (0..l.outputs)
                .map(|o| {
                    let row = &l.weights[o * l.inputs..(o + 1) * l.inputs];
                    elu(row.iter().zip(&h).map(|(w, v)| w * v).sum::<f64>() + l.biases[o])
                })
                .collect();
        }
        Ok(h)
    }
}

/// Standard-normal latent tangent vector of length `len`.
pub fn latent_vector(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = derived(seed, LATENT_STREAM);
    (0..len).map(|_| rng.sample(StandardNormal)).collect()
}

fn digest(v: &[f64]) -> String {
    let mut h = Sha256::new();
    for x in v {
        h.update(x.to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Node values of a synthetic (or externally supplied) objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveTable {
    pub truth: String,
    pub seed: u64,
    /// SHA-256 of the latent vector's little-endian bytes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latent_digest: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pad_euclidean: Option<bool>,
    pub values: BTreeMap<String, f64>,
}

/// Score every candidate against the truth. Candidates must match the
/// truth's factor count, and the truth must be among them.
pub fn generate_objective(truth: &Signature, candidates: &[Signature], seed: u64) -> Result<ObjectiveTable> {
    let n = truth.len();
    let truth_label = truth.canonicalize().to_string();
    if let Some(bad) = candidates.iter().find(|c| c.len() != n) {
        return Err(Error::Invalid(format!("candidate {bad} does not have {n} factors like the truth")));
    }
    let labels: Vec<String> = candidates.iter().map(|c| c.canonicalize().to_string()).collect();
    if !labels.contains(&truth_label) {
        return Err(Error::Invalid(format!("truth {truth_label} is not among the candidates")));
    }
    let latent = latent_vector(truth.tangent_dim(), seed);
    let net = FrozenMlp::new(3 * n, seed)?;
    let decode = |s: &Signature| -> Result<Vec<f64>> {
        let s = s.canonicalize();
        net.forward(&s.flatten(&s.project(&latent)?, true))
    };
    let target = decode(truth)?;
    let scores: Vec<f64> = candidates
        .par_iter()
        .map(|c| {
            let y = decode(c)?;
            Ok(y.iter().zip(&target).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / y.len() as f64)
        })
        .collect::<Result<_>>()?;
    let mut values = BTreeMap::new();
    for (l, v) in labels.into_iter().zip(scores) {
        if !v.is_finite() {
            return Err(Error::Numerical(format!("objective at {l} is not finite")));
        }
        if values.insert(l.clone(), v).is_some() {
            return Err(Error::Invalid(format!("candidate {l} listed twice")));
        }
    }
    Ok(ObjectiveTable {
        truth: truth_label,
        seed,
        latent_digest: Some(digest(&latent)),
        pad_euclidean: Some(true),
        values,
    })
}

impl ObjectiveTable {
    /// Non-truth nodes whose value is within [`COLLISION_TOL`] of zero.
    pub fn near_zero(&self) -> Vec<&str> {
        self.values
            .iter()
            .filter(|(k, v)| **k != self.truth && v.abs() <= COLLISION_TOL)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn min_value(&self) -> f64 {
        self.values.values().cloned().fold(f64::INFINITY, f64::min)
    }

    /// Values in the order of `labels`; every label must be present.
    pub fn objective_for(&self, labels: &[String]) -> Result<Vec<f64>> {
        let missing: Vec<&str> =
            labels.iter().filter(|l| !self.values.contains_key(*l)).map(|l| l.as_str()).collect();
        if !missing.is_empty() {
            return Err(Error::Invalid(format!("objective is missing graph nodes: {}", missing.join(" "))));
        }
        Ok(labels.iter().map(|l| self.values[l]).collect())
    }

    pub fn validate(&self) -> Result<()> {
        for (k, v) in &self.values {
            let sig: Signature = k.parse()?;
            if sig.to_string() != *k || !sig.is_canonical() {
                return Err(Error::Invalid(format!("objective key {k:?} is not a canonical signature")));
            }
            if !v.is_finite() {
                return Err(Error::Invalid(format!("objective value at {k} is not finite")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let t: Self = serde_json::from_str(s)?;
        t.validate()?;
        Ok(t)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
