//! Table of pairwise model-space distances used to weight the search graph.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::blanusa::BlanusaEmbedding;
use super::estimate::{analytic_es_bounds, estimate_gh_eh_with, estimate_gh_sh_with, hyperbolic_cloud, SweepConfig};
use crate::error::{Error, Result};
use crate::model_spaces::SpaceKind;

/// Where a table entry came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Analytic,
    Estimated,
    PaperPreset,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Provenance::Analytic => "analytic",
            Provenance::Estimated => "estimated",
            Provenance::PaperPreset => "paper_preset",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(Provenance::Analytic),
            "estimated" => Ok(Provenance::Estimated),
            "paper_preset" => Ok(Provenance::PaperPreset),
            other => Err(Error::Invalid(format!("unknown provenance {other:?}"))),
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How [`GhTable::build`] fills the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableMode {
    /// Published two-decimal values.
    PaperPreset,
    /// Analytic lower bound for E-S, sweeps for E-H and S-H.
    Recompute,
}

/// Unordered pair of distinct model-space kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KindPair {
    ES,
    EH,
    SH,
}

impl KindPair {
    pub const ALL: [KindPair; 3] = [KindPair::ES, KindPair::EH, KindPair::SH];

    pub fn of(a: SpaceKind, b: SpaceKind) -> Option<Self> {
        use SpaceKind::*;
        match (a.min(b), a.max(b)) {
            (Euclidean, Hypersphere) => Some(KindPair::ES),
            (Euclidean, Hyperboloid) => Some(KindPair::EH),
            (Hyperboloid, Hypersphere) => Some(KindPair::SH),
            _ => None,
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            KindPair::ES => "E-S",
            KindPair::EH => "E-H",
            KindPair::SH => "S-H",
        }
    }
}

impl fmt::Display for KindPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct Pairs {
    #[serde(rename = "E-S")]
    es: f64,
    #[serde(rename = "E-H")]
    eh: f64,
    #[serde(rename = "S-H")]
    sh: f64,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    pairs: Pairs,
    cross_dimension: f64,
    provenance: String,
}

/// Estimated Gromov-Hausdorff distances between the unit balls of `E^2`,
/// `H^2` and `S^2`, plus the distance assigned to adding one factor.
#[derive(Debug, Clone, PartialEq)]
pub struct GhTable {
    pairs: Pairs,
    provenance: [Provenance; 3],
    pub cross_dimension: f64,
}

impl GhTable {
    pub fn paper_preset() -> Self {
        Self {
            pairs: Pairs { es: 0.23, eh: 0.77, sh: 0.84 },
            provenance: [Provenance::PaperPreset; 3],
            cross_dimension: 1.0,
        }
    }

    pub fn new(es: f64, eh: f64, sh: f64, provenance: [Provenance; 3]) -> Result<Self> {
        let t = Self { pairs: Pairs { es, eh, sh }, provenance, cross_dimension: 1.0 };
        t.validate()?;
        Ok(t)
    }

    /// Build a table. `Recompute` needs the embedding constants.
    pub fn build(mode: TableMode, emb: Option<&BlanusaEmbedding>, cfg: &SweepConfig) -> Result<Self> {
        match mode {
            TableMode::PaperPreset => Ok(Self::paper_preset()),
            TableMode::Recompute => {
                let emb = emb.ok_or_else(|| {
                    Error::Precondition("recomputing the table needs the embedding constants".into())
                })?;
                let target = hyperbolic_cloud(emb, cfg)?;
                let eh = estimate_gh_eh_with(&target, cfg, false)?.value;
                let sh = estimate_gh_sh_with(&target, cfg, false)?.value;
                Self::new(
                    analytic_es_bounds().0,
                    eh,
                    sh,
                    [Provenance::Analytic, Provenance::Estimated, Provenance::Estimated],
                )
            }
        }
    }

    fn validate(&self) -> Result<()> {
        for pair in KindPair::ALL {
            let d = self.get(pair);
            if !(d > 0.0 && d <= 1.0) {
                return Err(Error::Invalid(format!("table entry {pair} = {d} outside (0, 1]")));
            }
        }
        if self.cross_dimension != 1.0 {
            return Err(Error::Invalid(format!(
                "cross-dimension distance must be 1, got {}",
                self.cross_dimension
            )));
        }
        Ok(())
    }

    pub fn get(&self, pair: KindPair) -> f64 {
        match pair {
            KindPair::ES => self.pairs.es,
            KindPair::EH => self.pairs.eh,
            KindPair::SH => self.pairs.sh,
        }
    }

    pub fn provenance(&self, pair: KindPair) -> Provenance {
        self.provenance[pair as usize]
    }

    /// Distance between two kinds; zero for identical kinds.
    pub fn distance(&self, a: SpaceKind, b: SpaceKind) -> f64 {
        KindPair::of(a, b).map_or(0.0, |p| self.get(p))
    }

    fn provenance_string(&self) -> String {
        if self.provenance.iter().all(|p| *p == Provenance::PaperPreset) {
            return Provenance::PaperPreset.as_str().to_string();
        }
        KindPair::ALL
            .iter()
            .map(|p| format!("{}={}", p.key(), self.provenance(*p).as_str()))
            .collect::<Vec<_>>()
            .join(";")
    }

    fn parse_provenance(s: &str) -> Result<[Provenance; 3]> {
        if !s.contains('=') {
            return Ok([Provenance::parse(s)?; 3]);
        }
        let mut out = [Provenance::PaperPreset; 3];
        for part in s.split(';') {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("malformed provenance entry {part:?}")))?;
            let pair = KindPair::ALL
                .into_iter()
                .find(|p| p.key() == k)
                .ok_or_else(|| Error::Invalid(format!("unknown pair {k:?}")))?;
            out[pair as usize] = Provenance::parse(v)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        let file = TableFile {
            pairs: self.pairs,
            cross_dimension: self.cross_dimension,
            provenance: self.provenance_string(),
        };
        Ok(serde_json::to_string_pretty(&file)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: TableFile = serde_json::from_str(s)?;
        let t = Self {
            pairs: file.pairs,
            provenance: Self::parse_provenance(&file.provenance)?,
            cross_dimension: file.cross_dimension,
        };
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
