//! The graph of candidate product-manifold signatures.

use std::collections::{HashMap, HashSet, VecDeque};
use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gh::{GhTable, KindPair};
use crate::model_spaces::SpaceKind;
use crate::product::Signature;

/// Rounded weights `1/d_GH` for the E-S, E-H and S-H substitutions.
pub const ROUNDED_WEIGHTS: [(KindPair, f64); 3] =
    [(KindPair::ES, 4.35), (KindPair::EH, 1.30), (KindPair::SH, 1.20)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphVariant {
    GhWeighted,
    UnweightedPruned,
    CompleteUnweighted,
}

impl GraphVariant {
    pub fn name(self) -> &'static str {
        match self {
            Self::GhWeighted => "gh_weighted",
            Self::UnweightedPruned => "unweighted_pruned",
            Self::CompleteUnweighted => "complete_unweighted",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Self::GhWeighted, Self::UnweightedPruned, Self::CompleteUnweighted]
            .into_iter()
            .find(|v| v.name() == s)
    }
}

/// How substitution edges get their weight from the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    /// `1 / d_GH`.
    #[default]
    Exact,
    /// The two-decimal values of [`ROUNDED_WEIGHTS`].
    Rounded,
}

/// Relation between two signatures in the pruned graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Substitution(SpaceKind, SpaceKind),
    Insertion,
}

/// Classify the pair `(a, b)` by factor counts: one substitution (same
/// size), one insertion (sizes differ by one), or neither.
pub fn relation(a: &Signature, b: &Signature) -> Option<Move> {
    let (ca, cb) = (a.counts(), b.counts());
    let diff: Vec<i64> = (0..3).map(|i| ca[i] as i64 - cb[i] as i64).collect();
    let total: i64 = diff.iter().sum();
    match total {
        0 => {
            let plus: Vec<usize> = (0..3).filter(|&i| diff[i] == 1).collect();
            let minus: Vec<usize> = (0..3).filter(|&i| diff[i] == -1).collect();
            let zeros = (0..3).filter(|&i| diff[i] == 0).count();
            (plus.len() == 1 && minus.len() == 1 && zeros == 1)
                .then(|| Move::Substitution(SpaceKind::ALL[plus[0]], SpaceKind::ALL[minus[0]]))
        }
        1 | -1 => {
            let s = total.signum();
            diff.iter().all(|&d| d == 0 || d == s).then_some(Move::Insertion)
        }
        _ => None,
    }
}

/// Canonical signatures of size `1..=max_factors`, or exactly `fixed_size`,
/// ordered by size and then by their string form.
pub fn enumerate_signatures(max_factors: usize, fixed_size: Option<usize>) -> Result<Vec<Signature>> {
    if max_factors == 0 {
        return Err(Error::Invalid("max_factors must be at least 1".into()));
    }
    let sizes: Vec<usize> = match fixed_size {
        Some(0) => return Err(Error::Invalid("fixed size must be at least 1".into())),
        Some(s) => vec![s],
        None => (1..=max_factors).collect(),
    };
    let mut out = Vec::new();
    for k in sizes {
        let mut level: Vec<(String, Signature)> = Vec::with_capacity((k + 1) * (k + 2) / 2);
        for ne in 0..=k {
            for nh in 0..=k - ne {
                let ns = k - ne - nh;
                let kinds: Vec<SpaceKind> = std::iter::repeat_n(SpaceKind::Euclidean, ne)
                    .chain(std::iter::repeat_n(SpaceKind::Hyperboloid, nh))
                    .chain(std::iter::repeat_n(SpaceKind::Hypersphere, ns))
                    .collect();
                let sig = Signature::from_kinds(&kinds)?;
                level.push((sig.to_string(), sig));
            }
        }
        level.sort_by(|a, b| a.0.cmp(&b.0));
        out.extend(level.into_iter().map(|(_, s)| s));
    }
    Ok(out)
}

/// Number of canonical signatures with exactly `k` factors.
pub fn level_count(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

/// The alternative closed form `3 + 5h/2 + h^2/2` found in the literature
/// for the node count of tree level `h`; kept for diagnostics only since it
/// disagrees with direct enumeration.
pub fn tree_level_formula(h: usize) -> f64 {
    let h = h as f64;
    3.0 + 2.5 * h + 0.5 * h * h
}

/// An immutable search graph.
#[derive(Debug, Clone)]
pub struct GraphSpace {
    nodes: Vec<Signature>,
    labels: Vec<String>,
    adjacency: DMatrix<f64>,
    variant: GraphVariant,
}

fn substitution_weight(table: &GhTable, mode: WeightMode, a: SpaceKind, b: SpaceKind) -> f64 {
    let pair = KindPair::of(a, b).expect("substitution between distinct kinds");
    match mode {
        WeightMode::Exact => 1.0 / table.get(pair),
        WeightMode::Rounded => ROUNDED_WEIGHTS.iter().find(|(p, _)| *p == pair).map(|(_, w)| *w).unwrap(),
    }
}

/// Build the graph over `nodes`. The table is read only by the
/// `GhWeighted` variant.
pub fn build_graph(
    nodes: Vec<Signature>,
    table: Option<&GhTable>,
    variant: GraphVariant,
    mode: WeightMode,
) -> Result<GraphSpace> {
    if nodes.is_empty() {
        return Err(Error::Invalid("a graph needs at least one node".into()));
    }
    let labels: Vec<String> = nodes.iter().map(|s| s.to_string()).collect();
    let mut seen = HashSet::new();
    for (s, l) in nodes.iter().zip(&labels) {
        if !s.is_canonical() {
            return Err(Error::Invalid(format!("node {l} is not canonical")));
        }
        if !seen.insert(l.as_str()) {
            return Err(Error::Invalid(format!("duplicate node {l}")));
        }
    }
    let table = match (variant, table) {
        (GraphVariant::GhWeighted, None) => {
            return Err(Error::Precondition("the gh_weighted variant needs a GH table".into()))
        }
        (_, t) => t,
    };
    let n = nodes.len();
    let mut adjacency = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let w = match variant {
                GraphVariant::CompleteUnweighted => 1.0,
                GraphVariant::UnweightedPruned => match relation(&nodes[i], &nodes[j]) {
                    Some(_) => 1.0,
                    None => 0.0,
                },
                GraphVariant::GhWeighted => {
                    let t = table.expect("checked above");
                    match relation(&nodes[i], &nodes[j]) {
                        Some(Move::Substitution(a, b)) => substitution_weight(t, mode, a, b),
                        Some(Move::Insertion) => 1.0 / t.cross_dimension,
                        None => 0.0,
                    }
                }
            };
            adjacency[(i, j)] = w;
            adjacency[(j, i)] = w;
        }
    }
    Ok(GraphSpace { nodes, labels, adjacency, variant })
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    variant: String,
    nodes: Vec<String>,
    edges: Vec<(usize, usize, f64)>,
}

impl GraphSpace {
    pub fn nodes(&self) -> &[Signature] {
        &self.nodes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn variant(&self) -> GraphVariant {
        self.variant
    }

    pub fn adjacency(&self) -> &DMatrix<f64> {
        &self.adjacency
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.adjacency[(i, j)]
    }

    /// Edges `(i, j, w)` with `i < j`, row-major.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let w = self.adjacency[(i, j)];
                if w != 0.0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    /// `L = D - A`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut l = -self.adjacency.clone();
        for i in 0..n {
            l[(i, i)] = self.adjacency.row(i).sum();
        }
        l
    }

    /// Distinct edge weights, descending.
    pub fn distinct_edge_weights(&self) -> Vec<f64> {
        let mut ws: Vec<f64> = self.edges().into_iter().map(|e| e.2).collect();
        ws.sort_by(|a, b| b.total_cmp(a));
        ws.dedup();
        ws
    }

    /// Breadth-first reachability from node 0.
    pub fn is_connected(&self) -> bool {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if !seen[j] && self.adjacency[(i, j)] > 0.0 {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = GraphJson {
            variant: self.variant.name().to_string(),
            nodes: self.labels.clone(),
            edges: self.edges(),
        };
        let mut s = serde_json::to_string(&doc)?;
        s.push('\n');
        Ok(s)
    }

    /// Parse and validate a graph document: canonical unique nodes, `i < j`,
    /// no repeated edges, positive weights, and the edge rules of the variant.
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: GraphJson = serde_json::from_str(s)?;
        let variant = GraphVariant::from_name(&doc.variant)
            .ok_or_else(|| Error::Invalid(format!("unknown graph variant {:?}", doc.variant)))?;
        let mut nodes = Vec::with_capacity(doc.nodes.len());
        for label in &doc.nodes {
            let sig: Signature = label.parse()?;
            if !sig.is_canonical() {
                return Err(Error::Invalid(format!("node {label} is not canonical")));
            }
            nodes.push(sig);
        }
        let n = nodes.len();
        if n == 0 {
            return Err(Error::Invalid("graph has no nodes".into()));
        }
        let mut index = HashMap::new();
        for (i, l) in doc.nodes.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate node {l}")));
            }
        }
        let mut adjacency = DMatrix::zeros(n, n);
        for &(i, j, w) in &doc.edges {
            if i >= j || j >= n {
                return Err(Error::Invalid(format!("edge ({i}, {j}) must satisfy i < j < {n}")));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::Invalid(format!("edge ({i}, {j}) has weight {w}")));
            }
            if adjacency[(i, j)] != 0.0 {
                return Err(Error::Invalid(format!("edge ({i}, {j}) listed twice")));
            }
            adjacency[(i, j)] = w;
            adjacency[(j, i)] = w;
        }
        for i in 0..n {
            for j in i + 1..n {
                let present = adjacency[(i, j)] != 0.0;
                let expected = match variant {
                    GraphVariant::CompleteUnweighted => true,
                    _ => relation(&nodes[i], &nodes[j]).is_some(),
                };
                if present != expected {
                    return Err(Error::Invalid(format!(
                        "edge ({}, {}) violates the {} edge rule",
                        doc.nodes[i],
                        doc.nodes[j],
                        variant.name()
                    )));
                }
                if present && variant != GraphVariant::GhWeighted && adjacency[(i, j)] != 1.0 {
                    return Err(Error::Invalid(format!("unweighted edge ({i}, {j}) has weight != 1")));
                }
            }
        }
        Ok(Self { nodes, labels: doc.nodes, adjacency, variant })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Copy of this graph over the same nodes with another variant.
    pub fn with_variant(&self, variant: GraphVariant, table: Option<&GhTable>, mode: WeightMode) -> Result<Self> {
        if variant == self.variant {
            return Ok(self.clone());
        }
        build_graph(self.nodes.clone(), table, variant, mode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn gh(max: usize) -> GraphSpace {
        build_graph(
            enumerate_signatures(max, None).unwrap(),
            Some(&GhTable::paper_preset()),
            GraphVariant::GhWeighted,
            WeightMode::Exact,
        )
        .unwrap()
    }

    #[test]
    fn level_sizes() {
        let labels = |k| -> Vec<String> {
            enumerate_signatures(k, Some(k)).unwrap().iter().map(|s| s.to_string()).collect()
        };
        assert_eq!(labels(1), ["E", "H", "S"]);
        assert_eq!(labels(2), ["E,E", "E,H", "E,S", "H,H", "H,S", "S,S"]);
        assert_eq!(enumerate_signatures(3, Some(3)).unwrap().len(), 10);
        assert_eq!(enumerate_signatures(7, None).unwrap().len(), 119);
        assert_eq!(enumerate_signatures(13, Some(13)).unwrap().len(), 105);
        assert!(enumerate_signatures(0, None).is_err());
    }

    #[test]
    fn size_major_order() {
        let all = enumerate_signatures(3, None).unwrap();
        assert!(all.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            a.len() < b.len() || (a.len() == b.len() && a.to_string() < b.to_string())
        }));
    }

    #[test]
    fn worked_examples() {
        let g = gh(3);
        let i = |s: &str| g.index_of(&sig(s).canonicalize().to_string()).unwrap();
        assert_eq!(g.weight(i("S,H"), i("E,H")), 1.0 / 0.23);
        assert_eq!(g.weight(i("S,H"), i("E,E")), 0.0);
        assert_eq!(g.weight(i("E,H"), i("E,H,H")), 1.0);
        assert_eq!(g.weight(i("E"), i("E,H,H")), 0.0);
        assert_eq!(g.weight(i("S"), i("E,H")), 0.0);
    }

    #[test]
    fn four_weights() {
        let g = gh(2);
        assert_eq!(g.distinct_edge_weights(), vec![1.0 / 0.23, 1.0 / 0.77, 1.0 / 0.84, 1.0]);
        let g1 = gh(1);
        assert_eq!(g1.distinct_edge_weights().len(), 3);
        assert!(g1.distinct_edge_weights().iter().all(|&w| w > 1.0));
        let rounded = build_graph(
            enumerate_signatures(4, None).unwrap(),
            Some(&GhTable::paper_preset()),
            GraphVariant::GhWeighted,
            WeightMode::Rounded,
        )
        .unwrap();
        assert_eq!(rounded.distinct_edge_weights(), vec![4.35, 1.30, 1.20, 1.0]);
    }

    #[test]
    fn unweighted_variants() {
        let nodes = enumerate_signatures(3, None).unwrap();
        for v in [GraphVariant::UnweightedPruned, GraphVariant::CompleteUnweighted] {
            let g = build_graph(nodes.clone(), None, v, WeightMode::Exact).unwrap();
            assert_eq!(g.distinct_edge_weights(), vec![1.0]);
            assert!(g.is_connected());
        }
        let complete = build_graph(nodes, None, GraphVariant::CompleteUnweighted, WeightMode::Exact).unwrap();
        assert_eq!(complete.edges().len(), 19 * 18 / 2);
    }

    #[test]
    fn gh_variant_needs_table() {
        let nodes = enumerate_signatures(2, None).unwrap();
        assert!(matches!(
            build_graph(nodes, None, GraphVariant::GhWeighted, WeightMode::Exact),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn duplicates_rejected() {
        let nodes = vec![sig("E,H"), sig("E,H")];
        assert!(build_graph(nodes, None, GraphVariant::UnweightedPruned, WeightMode::Exact).is_err());
        let raw = vec![sig("H,E")];
        assert!(build_graph(raw, None, GraphVariant::UnweightedPruned, WeightMode::Exact).is_err());
    }

    #[test]
    fn laplacian_two_nodes() {
        let g = build_graph(
            vec![sig("E"), sig("H")],
            Some(&GhTable::paper_preset()),
            GraphVariant::GhWeighted,
            WeightMode::Exact,
        )
        .unwrap();
        let w = 1.0 / 0.77;
        assert_eq!(g.laplacian(), DMatrix::from_row_slice(2, 2, &[w, -w, -w, w]));
    }

    #[test]
    fn laplacian_rows_sum_to_zero() {
        let l = gh(4).laplacian();
        for i in 0..l.nrows() {
            assert!(l.row(i).sum().abs() <= 1e-12);
        }
        assert_eq!(l, l.transpose());
    }

    #[test]
    fn connected_for_all_sizes() {
        for k in 1..=6 {
            assert!(gh(k).is_connected());
            let slice = build_graph(
                enumerate_signatures(k, Some(k)).unwrap(),
                None,
                GraphVariant::UnweightedPruned,
                WeightMode::Exact,
            )
            .unwrap();
            assert!(slice.is_connected());
        }
    }

    #[test]
    fn json_round_trip() {
        let g = gh(3);
        let s = g.to_json().unwrap();
        let back = GraphSpace::from_json(&s).unwrap();
        assert_eq!(back.to_json().unwrap(), s);
        assert_eq!(back.adjacency(), g.adjacency());
    }

    #[test]
    fn json_validation() {
        let ok = r#"{"variant":"unweighted_pruned","nodes":["E","H"],"edges":[[0,1,1.0]]}"#;
        assert!(GraphSpace::from_json(ok).is_ok());
        for bad in [
            r#"{"variant":"unweighted_pruned","nodes":["E","H"],"edges":[[1,0,1.0]]}"#,
            r#"{"variant":"unweighted_pruned","nodes":["E","H"],"edges":[]}"#,
            r#"{"variant":"unweighted_pruned","nodes":["E","H"],"edges":[[0,1,1.0],[0,1,1.0]]}"#,
            r#"{"variant":"unweighted_pruned","nodes":["E","H,E"],"edges":[[0,1,1.0]]}"#,
            r#"{"variant":"gh_weighted","nodes":["E","S,S"],"edges":[[0,1,1.0]]}"#,
            r#"{"variant":"gh_weighted","nodes":["E","H"],"edges":[[0,1,-1.0]]}"#,
            r#"{"variant":"mystery","nodes":["E"],"edges":[]}"#,
        ] {
            assert!(GraphSpace::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn substitution_weights_depend_on_kinds_only() {
        let g = gh(4);
        let mut by_pair: HashMap<KindPair, HashSet<u64>> = HashMap::new();
        for (i, j, w) in g.edges() {
            if let Some(Move::Substitution(a, b)) = relation(&g.nodes()[i], &g.nodes()[j]) {
                by_pair.entry(KindPair::of(a, b).unwrap()).or_default().insert(w.to_bits());
            }
        }
        assert_eq!(by_pair.len(), 3);
        assert!(by_pair.values().all(|s| s.len() == 1));
    }

    #[test]
    fn tree_formula_disagrees() {
        assert_eq!(level_count(1), 3);
        assert_eq!(tree_level_formula(1), 6.0);
    }
}
