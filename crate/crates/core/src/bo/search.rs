//! Search loops over graph nodes and their traces.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gp::{expected_improvement, fit_hyperparameters, refit_signal, standardized_posterior, GpState, DEFAULT_NOISE};
use super::kernel::{default_beta_grid, KernelCache};
use crate::error::{Error, Result};
use crate::rng::derived;
use crate::space::{GraphSpace, GraphVariant, WeightMode};

/// Acquisition values within this distance of the maximum count as ties.
pub const TIE_TOLERANCE: f64 = 1e-12;

const INIT_STREAM: u64 = 0;
const TIE_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    GhBo,
    NaiveBo,
    UnweightedBo,
    Random,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::GhBo, Method::NaiveBo, Method::UnweightedBo, Method::Random];

    pub fn name(self) -> &'static str {
        match self {
            Self::GhBo => "gh_bo",
            Self::NaiveBo => "naive_bo",
            Self::UnweightedBo => "unweighted_bo",
            Self::Random => "random",
        }
    }

    /// Graph variant the method searches on, if any.
    pub fn graph_variant(self) -> Option<GraphVariant> {
        match self {
            Self::GhBo => Some(GraphVariant::GhWeighted),
            Self::NaiveBo => Some(GraphVariant::CompleteUnweighted),
            Self::UnweightedBo => Some(GraphVariant::UnweightedPruned),
            Self::Random => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts `gh_bo` as well as `gh-bo`.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|m| m.name() == norm)
            .ok_or_else(|| Error::Invalid(format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub budget: usize,
    pub n_init: usize,
    pub noise_variance: f64,
    pub beta_grid: Vec<f64>,
    /// Keep the lengthscale chosen at the first fit for the rest of the run.
    pub freeze_beta: bool,
    /// Stop once an objective value at or below this is observed.
    pub stop_value: Option<f64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            budget: 60,
            n_init: 3,
            noise_variance: DEFAULT_NOISE,
            beta_grid: default_beta_grid(),
            freeze_beta: false,
            stop_value: None,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self, nodes: usize) -> Result<()> {
        if self.n_init == 0 || self.budget < self.n_init {
            return Err(Error::Invalid(format!(
                "need budget >= n_init >= 1, got budget {} and n_init {}",
                self.budget, self.n_init
            )));
        }
        if self.budget > nodes {
            return Err(Error::Invalid(format!("budget {} exceeds the {nodes} nodes", self.budget)));
        }
        if !(self.noise_variance >= 0.0 && self.noise_variance.is_finite()) {
            return Err(Error::Invalid("noise variance must be finite and >= 0".into()));
        }
        Ok(())
    }
}

/// Graph nodes plus the kernel caches needed by a set of methods.
#[derive(Debug, Clone)]
pub struct SearchContext {
    labels: Vec<String>,
    caches: HashMap<Method, Arc<KernelCache>>,
}

impl SearchContext {
    /// The `gh_bo` method needs `graph` to be GH-weighted; the unweighted
    /// baselines are rebuilt over the same nodes.
    pub fn new(graph: &GraphSpace, methods: &[Method], beta_grid: &[f64]) -> Result<Self> {
        let mut caches = HashMap::new();
        for &m in methods {
            let Some(variant) = m.graph_variant() else { continue };
            if caches.contains_key(&m) {
                continue;
            }
            let g = if graph.variant() == variant {
                graph.clone()
            } else if variant == GraphVariant::GhWeighted {
                return Err(Error::Precondition(format!(
                    "method {m} needs a gh_weighted graph, got {}",
                    graph.variant().name()
                )));
            } else {
                graph.with_variant(variant, None, WeightMode::Exact)?
            };
            caches.insert(m, Arc::new(KernelCache::from_graph(&g, beta_grid)?));
        }
        Ok(Self { labels: graph.labels().to_vec(), caches })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iteration: usize,
    pub node_index: usize,
    pub signature: String,
    pub objective: f64,
    pub best_so_far: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace {
    pub method: Method,
    pub seed: u64,
    pub rows: Vec<TraceRow>,
}

impl RunTrace {
    pub fn run_id(&self) -> String {
        format!("{}-{}", self.method, self.seed)
    }

    pub fn final_best(&self) -> f64 {
        self.rows.last().map_or(f64::INFINITY, |r| r.best_so_far)
    }

    /// Best-so-far after each of `len` queries, carrying the last value
    /// forward past an early stop.
    pub fn best_curve(&self, len: usize) -> Vec<f64> {
        let last = self.final_best();
        (0..len).map(|i| self.rows.get(i).map_or(last, |r| r.best_so_far)).collect()
    }

    /// Number of queries until a value `<= target` was observed.
    pub fn queries_to(&self, target: f64) -> Option<usize> {
        self.rows.iter().position(|r| r.objective <= target).map(|i| i + 1)
    }
}

fn push_row(rows: &mut Vec<TraceRow>, labels: &[String], objective: &[f64], node: usize) {
    let value = objective[node];
    let best = rows.last().map_or(value, |r: &TraceRow| r.best_so_far.min(value));
    rows.push(TraceRow {
        iteration: rows.len(),
        node_index: node,
        signature: labels[node].clone(),
        objective: value,
        best_so_far: best,
    });
}

fn check_objective(objective: &[f64], n: usize) -> Result<()> {
    if objective.len() != n {
        return Err(Error::Dimension { expected: n, got: objective.len() });
    }
    if let Some(i) = objective.iter().position(|v| !v.is_finite()) {
        return Err(Error::Invalid(format!("objective value at node {i} is not finite")));
    }
    Ok(())
}

/// One search run minimizing `objective` (indexed by node).
///
/// All methods share the same seeded node permutation: the BO methods take
/// its first `n_init` entries as the initial design and random search walks
/// it to the end of the budget.
pub fn run_search(
    ctx: &SearchContext,
    objective: &[f64],
    method: Method,
    cfg: &SearchConfig,
    seed: u64,
) -> Result<RunTrace> {
    let n = ctx.len();
    cfg.validate(n)?;
    check_objective(objective, n)?;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut derived(seed, INIT_STREAM));
    let stop = |rows: &[TraceRow]| match (cfg.stop_value, rows.last()) {
        (Some(v), Some(r)) => r.objective <= v,
        _ => false,
    };
    let mut rows = Vec::with_capacity(cfg.budget);
    let initial = if method == Method::Random { cfg.budget } else { cfg.n_init };
    for &node in &perm[..initial] {
        push_row(&mut rows, &ctx.labels, objective, node);
        if stop(&rows) {
            return Ok(RunTrace { method, seed, rows });
        }
    }
    if method == Method::Random {
        return Ok(RunTrace { method, seed, rows });
    }

    let cache = ctx
        .caches
        .get(&method)
        .ok_or_else(|| Error::Precondition(format!("search context was built without {method}")))?;
    let mut tie_rng = derived(seed, TIE_STREAM);
    let mut observed = vec![false; n];
    for r in &rows {
        observed[r.node_index] = true;
    }
    let mut frozen: Option<usize> = None;
    while rows.len() < cfg.budget {
        let idx: Vec<usize> = rows.iter().map(|r| r.node_index).collect();
        let vals: Vec<f64> = rows.iter().map(|r| r.objective).collect();
        let state = GpState::new(idx, vals, cfg.noise_variance)?;
        let kernel = if state.len() < 2 {
            cache.kernel(0, 1.0)?
        } else if let Some(gi) = frozen {
            refit_signal(cache, gi, &state)?
        } else {
            let k = fit_hyperparameters(cache, &state)?;
            if cfg.freeze_beta {
                frozen = cache.grid().iter().position(|&b| b == k.beta);
            }
            k
        };
        let pool: Vec<usize> = (0..n).filter(|&i| !observed[i]).collect();
        let (mu, sd) = standardized_posterior(&kernel, &state, &pool)?;
        let (mean, std) = state.standardization();
        let best = (rows.last().expect("non-empty").best_so_far - mean) / std;
        let ei = expected_improvement(&mu, &sd, best)?;
        let top = ei.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let ties: Vec<usize> = (0..pool.len()).filter(|&i| ei[i] >= top - TIE_TOLERANCE).collect();
        let pick = if ties.len() == 1 { ties[0] } else { ties[tie_rng.random_range(0..ties.len())] };
        let node = pool[pick];
        observed[node] = true;
        push_row(&mut rows, &ctx.labels, objective, node);
        if stop(&rows) {
            break;
        }
    }
    Ok(RunTrace { method, seed, rows })
}

/// Every `(method, seed)` pair, methods outermost, run in parallel.
pub fn run_many(
    ctx: &SearchContext,
    objective: &[f64],
    methods: &[Method],
    seeds: &[u64],
    cfg: &SearchConfig,
) -> Result<Vec<RunTrace>> {
    let jobs: Vec<(Method, u64)> = methods.iter().flat_map(|&m| seeds.iter().map(move |&s| (m, s))).collect();
    jobs.par_iter().map(|&(m, s)| run_search(ctx, objective, m, cfg, s)).collect()
}

/// Trace CSV with one row per query.
pub fn write_traces_csv<W: Write>(mut w: W, traces: &[RunTrace]) -> Result<()> {
    writeln!(w, "run_id,method,seed,iteration,node_index,signature,objective,best_so_far")?;
    for t in traces {
        let id = t.run_id();
        for r in &t.rows {
            writeln!(
                w,
                "{id},{},{},{},{},\"{}\",{:e},{:e}",
                t.method, t.seed, r.iteration, r.node_index, r.signature, r.objective, r.best_so_far
            )?;
        }
    }
    Ok(())
}

/// Per-method statistics over seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodSummary {
    pub method: Method,
    pub runs: usize,
    /// Runs that observed the optimum within budget.
    pub found: usize,
    /// Median number of queries to the optimum; runs that miss it count as
    /// `budget + 1`.
    pub median_queries_to_optimum: f64,
    pub median_final_best: f64,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    match n {
        0 => f64::NAN,
        _ if n % 2 == 1 => values[n / 2],
        _ => 0.5 * (values[n / 2 - 1] + values[n / 2]),
    }
}

pub fn summarize(traces: &[RunTrace], optimum: f64, budget: usize) -> Vec<MethodSummary> {
    let mut methods: Vec<Method> = traces.iter().map(|t| t.method).collect();
    methods.sort();
    methods.dedup();
    methods
        .into_iter()
        .map(|m| {
            let runs: Vec<&RunTrace> = traces.iter().filter(|t| t.method == m).collect();
            let hits: Vec<Option<usize>> = runs.iter().map(|t| t.queries_to(optimum)).collect();
            let mut q: Vec<f64> = hits.iter().map(|h| h.unwrap_or(budget + 1) as f64).collect();
            let mut fb: Vec<f64> = runs.iter().map(|t| t.final_best()).collect();
            MethodSummary {
                method: m,
                runs: runs.len(),
                found: hits.iter().filter(|h| h.is_some()).count(),
                median_queries_to_optimum: median(&mut q),
                median_final_best: median(&mut fb),
            }
        })
        .collect()
}

/// Mean best-so-far curve over the runs of one method.
pub fn mean_curve(traces: &[RunTrace], method: Method, len: usize) -> Vec<f64> {
    let curves: Vec<Vec<f64>> = traces.iter().filter(|t| t.method == method).map(|t| t.best_curve(len)).collect();
    (0..len).map(|i| curves.iter().map(|c| c[i]).sum::<f64>() / curves.len() as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gh::GhTable;
    use crate::space::{build_graph, enumerate_signatures};

    fn graph() -> GraphSpace {
        build_graph(
            enumerate_signatures(4, None).unwrap(),
            Some(&GhTable::paper_preset()),
            GraphVariant::GhWeighted,
            WeightMode::Exact,
        )
        .unwrap()
    }

    fn objective(n: usize) -> Vec<f64> {
        (0..n).map(|i| 0.05 + ((i as f64) * 0.37).sin().abs() + (i % 5) as f64 * 0.1).collect()
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
            assert_eq!(m.name().replace('_', "-").parse::<Method>().unwrap(), m);
        }
        assert!("bo".parse::<Method>().is_err());
    }

    #[test]
    fn exhaustive_budget_finds_minimum() {
        let g = graph();
        let ctx = SearchContext::new(&g, &Method::ALL, &default_beta_grid()).unwrap();
        let obj = objective(g.len());
        let min = obj.iter().cloned().fold(f64::INFINITY, f64::min);
        let cfg = SearchConfig { budget: g.len(), ..Default::default() };
        for m in Method::ALL {
            let t = run_search(&ctx, &obj, m, &cfg, 5).unwrap();
            assert_eq!(t.rows.len(), g.len());
            let mut nodes: Vec<usize> = t.rows.iter().map(|r| r.node_index).collect();
            nodes.sort();
            assert_eq!(nodes, (0..g.len()).collect::<Vec<_>>());
            assert_eq!(t.final_best(), min);
            assert!(t.rows.windows(2).all(|w| w[1].best_so_far <= w[0].best_so_far));
            assert!(t.rows.iter().enumerate().all(|(i, r)| r.iteration == i));
        }
    }

    #[test]
    fn reproducible() {
        let g = graph();
        let ctx = SearchContext::new(&g, &Method::ALL, &default_beta_grid()).unwrap();
        let obj = objective(g.len());
        let cfg = SearchConfig { budget: 12, ..Default::default() };
        for m in Method::ALL {
            assert_eq!(run_search(&ctx, &obj, m, &cfg, 9).unwrap(), run_search(&ctx, &obj, m, &cfg, 9).unwrap());
        }
    }

    #[test]
    fn shared_initial_design() {
        let g = graph();
        let ctx = SearchContext::new(&g, &Method::ALL, &default_beta_grid()).unwrap();
        let obj = objective(g.len());
        let cfg = SearchConfig { budget: 8, ..Default::default() };
        let heads: Vec<Vec<usize>> = Method::ALL
            .iter()
            .map(|&m| run_search(&ctx, &obj, m, &cfg, 3).unwrap().rows[..3].iter().map(|r| r.node_index).collect())
            .collect();
        assert!(heads.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn early_stop_and_carry_forward() {
        let g = graph();
        let ctx = SearchContext::new(&g, &[Method::Random], &default_beta_grid()).unwrap();
        let mut obj = objective(g.len());
        obj[7] = 0.0;
        let cfg = SearchConfig { budget: g.len(), stop_value: Some(0.0), ..Default::default() };
        let t = run_search(&ctx, &obj, Method::Random, &cfg, 1).unwrap();
        assert_eq!(t.rows.last().unwrap().node_index, 7);
        let curve = t.best_curve(g.len());
        assert_eq!(curve.len(), g.len());
        assert_eq!(*curve.last().unwrap(), 0.0);
        assert_eq!(t.queries_to(0.0), Some(t.rows.len()));
    }

    #[test]
    fn config_errors() {
        let g = graph();
        let ctx = SearchContext::new(&g, &[Method::Random], &default_beta_grid()).unwrap();
        let obj = objective(g.len());
        let over = SearchConfig { budget: g.len() + 1, ..Default::default() };
        assert!(run_search(&ctx, &obj, Method::Random, &over, 0).is_err());
        let bad = SearchConfig { budget: 2, n_init: 3, ..Default::default() };
        assert!(run_search(&ctx, &obj, Method::Random, &bad, 0).is_err());
        assert!(run_search(&ctx, &obj[1..], Method::Random, &SearchConfig::default(), 0).is_err());
        assert!(run_search(&ctx, &obj, Method::GhBo, &SearchConfig::default(), 0).is_err());
        let unweighted = g.with_variant(GraphVariant::UnweightedPruned, None, WeightMode::Exact).unwrap();
        assert!(SearchContext::new(&unweighted, &[Method::GhBo], &default_beta_grid()).is_err());
    }

    #[test]
    fn frozen_beta_runs() {
        let g = graph();
        let ctx = SearchContext::new(&g, &[Method::GhBo], &default_beta_grid()).unwrap();
        let obj = objective(g.len());
        let cfg = SearchConfig { budget: 10, freeze_beta: true, ..Default::default() };
        assert_eq!(run_search(&ctx, &obj, Method::GhBo, &cfg, 2).unwrap().rows.len(), 10);
    }

    #[test]
    fn csv_layout() {
        let g = graph();
        let ctx = SearchContext::new(&g, &[Method::Random], &default_beta_grid()).unwrap();
        let obj = objective(g.len());
        let cfg = SearchConfig { budget: 4, ..Default::default() };
        let t = run_search(&ctx, &obj, Method::Random, &cfg, 0).unwrap();
        let mut buf = Vec::new();
        write_traces_csv(&mut buf, &[t]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "run_id,method,seed,iteration,node_index,signature,objective,best_so_far");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("random-0,random,0,0,"));
    }

    #[test]
    fn summary_medians() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
