//! The `nlgs` command-line front end.
//!
//! Exit codes: 0 on success, 1 on a numerical or runtime failure, 2 on a
//! usage or validation error. Parallel sections use all available cores
//! unless `RAYON_NUM_THREADS` says otherwise; outputs do not depend on the
//! worker count.

pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use rand::Rng;

use crate::bo::{self, log_grid, Method, SearchConfig, SearchContext};
use crate::error::{Error, Result};
use crate::gh::{self, BlanusaEmbedding, GhTable, SweepConfig, TableMode};
use crate::linalg::eig_sym;
use crate::product::Signature;
use crate::space::{self, GraphSpace, GraphVariant, WeightMode};
use crate::synthetic::generate_objective;
use config::{pick, RunConfig};

pub const DEFAULT_QUADRATURE_RES: usize = 2000;
pub const DEFAULT_GRID_STEP: f64 = 1e-5;

#[derive(Debug, Parser)]
#[command(name = "nlgs", version, about = "Latent geometry search over product manifolds")]
pub struct Cli {
    /// JSON configuration file (with "schema_version": 1); flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gromov-Hausdorff constants, bounds, estimates and tables.
    #[command(subcommand)]
    Gh(GhCommand),
    /// Build and inspect search graphs.
    #[command(subcommand)]
    Space(SpaceCommand),
    /// Generate benchmark objectives.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Run searches.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Numerical diagnostics.
    #[command(subcommand)]
    Diag(DiagCommand),
}

#[derive(Debug, Clone, Default, Args)]
pub struct ConstantsArgs {
    /// Simpson panels for the normalizing integral [default: 2000, min 1000].
    #[arg(long)]
    pub quadrature_res: Option<usize>,
    /// Finite-difference step for the derivative bounds [default: 1e-5, max 1e-4].
    #[arg(long)]
    pub grid_step: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    /// Radial samples of the E and H balls [default: 200].
    #[arg(long)]
    pub res_r: Option<usize>,
    /// Angular samples of the E and H balls [default: 200].
    #[arg(long)]
    pub res_t: Option<usize>,
    /// Samples per axis of the S cap [default: 100].
    #[arg(long)]
    pub sphere_res: Option<usize>,
    /// Offset grid intervals; steps + 1 offsets are tried [default: 100].
    #[arg(long)]
    pub offset_steps: Option<usize>,
    /// Half-width of the offset range [default: 0.5].
    #[arg(long)]
    pub offset_range: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairArg {
    #[value(name = "e-h")]
    EH,
    #[value(name = "s-h")]
    SH,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableModeArg {
    Paper,
    Recompute,
}

#[derive(Debug, Subcommand)]
pub enum GhCommand {
    /// Print the embedding constants A, G1, G2, c and eps.
    Constants(ConstantsArgs),
    /// Print the closed-form bounds on d_GH(E^2, S^2).
    AnalyticEs,
    /// Estimate d_GH(E^2, H^2) or d_GH(S^2, H^2) by an embedding sweep.
    Estimate {
        #[arg(long, value_enum)]
        pair: PairArg,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        constants: ConstantsArgs,
        /// Also compute the cloud-diameter upper bound.
        #[arg(long)]
        diameter: bool,
        /// Write the estimate as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a GH table.
    Table {
        #[arg(long, value_enum, default_value = "paper")]
        mode: TableModeArg,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        constants: ConstantsArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Gh,
    Unweighted,
    Complete,
}

impl VariantArg {
    fn variant(self) -> GraphVariant {
        match self {
            Self::Gh => GraphVariant::GhWeighted,
            Self::Unweighted => GraphVariant::UnweightedPruned,
            Self::Complete => GraphVariant::CompleteUnweighted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightsArg {
    Exact,
    Rounded,
}

#[derive(Debug, Subcommand)]
pub enum SpaceCommand {
    /// Enumerate signatures and write the graph JSON.
    Build {
        /// Largest factor count [default: 7].
        #[arg(long)]
        max_factors: Option<usize>,
        /// Only signatures with exactly this many factors.
        #[arg(long)]
        fixed_size: Option<usize>,
        /// Graph variant [default: gh].
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Substitution weights: exact reciprocals or rounded [default: exact].
        #[arg(long, value_enum)]
        weights: Option<WeightsArg>,
        /// GH table JSON; required by the gh variant.
        #[arg(long)]
        gh_table: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print node and edge counts and the distinct edge weights of a graph.
    Stats {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum BenchCommand {
    /// Synthetic objective over the fixed-size slice.
    Synth {
        /// Factor count of every candidate [default: 13].
        #[arg(long)]
        factors: Option<usize>,
        /// Ground-truth signature, e.g. "E,H,H,S".
        #[arg(long)]
        truth: Option<String>,
        /// Seed of the network and the latent vector [default: 0].
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// Run every (method, seed) pair and write the trace CSV.
    Run(SearchRunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SearchRunArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub objective: PathBuf,
    /// Comma-separated methods [default: gh-bo,naive-bo,unweighted-bo,random].
    #[arg(long)]
    pub methods: Option<String>,
    /// Queries per run [default: 60].
    #[arg(long)]
    pub budget: Option<usize>,
    /// Seeds as a list "1,2,5" or an inclusive range "0..9" [default: 0..9].
    #[arg(long)]
    pub seeds: Option<String>,
    /// Initial uniform queries of the BO methods [default: 3].
    #[arg(long)]
    pub n_init: Option<usize>,
    /// Smallest lengthscale of the grid [default: 0.01].
    #[arg(long)]
    pub beta_min: Option<f64>,
    /// Largest lengthscale of the grid [default: 100].
    #[arg(long)]
    pub beta_max: Option<f64>,
    /// Log-spaced lengthscales in the grid [default: 25].
    #[arg(long)]
    pub beta_count: Option<usize>,
    /// Observation noise variance [default: 1e-6].
    #[arg(long)]
    pub noise_variance: Option<f64>,
    /// Keep the first fitted lengthscale for the whole run.
    #[arg(long)]
    pub freeze_beta: bool,
    /// Stop a run once a value at or below this is seen.
    #[arg(long)]
    pub stop_value: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum DiagCommand {
    /// Pullback-metric check of the hyperbolic embedding.
    Embed {
        /// Random sample points [default: 100].
        #[arg(long)]
        samples: Option<usize>,
        /// [default: 0]
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        constants: ConstantsArgs,
    },
    /// Eigensolver residuals on a random symmetric matrix.
    Eig {
        /// Matrix size [default: 50].
        #[arg(long)]
        size: Option<usize>,
        /// [default: 0]
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Parse and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

/// Entry point of the `nlgs` binary.
pub fn main() -> std::process::ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::ExitCode::from(code as u8)
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::empty(),
    };
    match &cli.command {
        Command::Gh(c) => cmd_gh(c, &cfg, out),
        Command::Space(c) => cmd_space(c, &cfg, out),
        Command::Bench(c) => cmd_bench(c, &cfg, out, err),
        Command::Search(SearchCommand::Run(a)) => cmd_search(a, &cfg, out),
        Command::Diag(c) => cmd_diag(c, &cfg, out),
    }
}

fn constants(a: &ConstantsArgs, cfg: &RunConfig) -> Result<BlanusaEmbedding> {
    BlanusaEmbedding::compute(
        pick(a.quadrature_res, cfg.gh.quadrature_res, DEFAULT_QUADRATURE_RES),
        pick(a.grid_step, cfg.gh.grid_step, DEFAULT_GRID_STEP),
    )
}

fn sweep_config(a: &SweepArgs, cfg: &RunConfig) -> Result<SweepConfig> {
    let d = SweepConfig::default();
    let g = &cfg.gh;
    let s = SweepConfig {
        res_r: pick(a.res_r, g.res_r, d.res_r),
        res_t: pick(a.res_t, g.res_t, d.res_t),
        sphere_res: pick(a.sphere_res, g.sphere_res, d.sphere_res),
        offset_steps: pick(a.offset_steps, g.offset_steps, d.offset_steps),
        offset_range: pick(a.offset_range, g.offset_range, d.offset_range),
    };
    s.validate()?;
    Ok(s)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn cmd_gh(c: &GhCommand, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match c {
        GhCommand::Constants(a) => {
            let e = constants(a, cfg)?;
            writeln!(out, "quadrature_res {}", e.quadrature_res)?;
            writeln!(out, "grid_step {:e}", e.grid_step)?;
            writeln!(out, "A {}", e.a)?;
            writeln!(out, "G1 {}", e.g1)?;
            writeln!(out, "G2 {}", e.g2)?;
            writeln!(out, "c {}", e.c)?;
            writeln!(out, "eps {}", e.eps)?;
        }
        GhCommand::AnalyticEs => {
            let (lo, hi) = gh::analytic_es_bounds();
            writeln!(out, "lower {lo:.6} ({lo})")?;
            writeln!(out, "upper {hi:.6} ({hi})")?;
        }
        GhCommand::Estimate { pair, sweep, constants: ca, diameter, out: path } => {
            let s = sweep_config(sweep, cfg)?;
            let e = constants(ca, cfg)?;
            let est = match pair {
                PairArg::EH => gh::estimate_gh_eh(&e, &s, *diameter)?,
                PairArg::SH => gh::estimate_gh_sh(&e, &s, *diameter)?,
            };
            let name = match pair {
                PairArg::EH => "E-H",
                PairArg::SH => "S-H",
            };
            writeln!(out, "pair {name}")?;
            writeln!(out, "estimate {}", est.value)?;
            writeln!(out, "candidates {}", est.candidates)?;
            writeln!(
                out,
                "best axes {:?} negated {} offset_axis {} offset {}",
                est.best.axes, est.best.negated, est.best.offset_axis, est.best.offset
            )?;
            if let Some(d) = est.diameter_bound {
                writeln!(out, "diameter_bound {d}")?;
            }
            if let Some(p) = path {
                let mut s = serde_json::to_string_pretty(&est)?;
                s.push('\n');
                write_file(p, &s)?;
            }
        }
        GhCommand::Table { mode, sweep, constants: ca, out: path } => {
            let table = match mode {
                TableModeArg::Paper => GhTable::paper_preset(),
                TableModeArg::Recompute => {
                    let s = sweep_config(sweep, cfg)?;
                    let e = constants(ca, cfg)?;
                    GhTable::build(TableMode::Recompute, Some(&e), &s)?
                }
            };
            write_file(path, &table.to_json()?)?;
            for pair in gh::KindPair::ALL {
                writeln!(out, "{} {} ({})", pair.key(), table.get(pair), table.provenance(pair))?;
            }
            writeln!(out, "cross_dimension {}", table.cross_dimension)?;
        }
    }
    Ok(0)
}

fn cmd_space(c: &SpaceCommand, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match c {
        SpaceCommand::Build { max_factors, fixed_size, variant, weights, gh_table, out: path } => {
            let sc = &cfg.space;
            let fixed = fixed_size.or(sc.fixed_size);
            let max = pick(*max_factors, sc.max_factors, fixed.unwrap_or(7));
            let variant = match (variant, &sc.variant) {
                (Some(v), _) => v.variant(),
                (None, Some(s)) => parse_variant(s)?,
                (None, None) => GraphVariant::GhWeighted,
            };
            let mode = match (weights, &sc.weights) {
                (Some(WeightsArg::Rounded), _) => WeightMode::Rounded,
                (Some(WeightsArg::Exact), _) => WeightMode::Exact,
                (None, Some(s)) if s == "rounded" => WeightMode::Rounded,
                (None, Some(s)) if s == "exact" => WeightMode::Exact,
                (None, Some(s)) => return Err(Error::Invalid(format!("unknown weight mode {s:?}"))),
                (None, None) => WeightMode::Exact,
            };
            let table_path = gh_table.clone().or_else(|| sc.gh_table.clone());
            let table = match (&table_path, variant) {
                (Some(p), _) => Some(GhTable::load(p).map_err(|e| usage(format!("GH table {}: {e}", p.display())))?),
                (None, GraphVariant::GhWeighted) => {
                    return Err(Error::Precondition("the gh variant needs --gh-table".into()))
                }
                (None, _) => None,
            };
            let nodes = space::enumerate_signatures(max, fixed)?;
            let g = space::build_graph(nodes, table.as_ref(), variant, mode)?;
            write_file(path, &g.to_json()?)?;
            print_stats(&g, out)?;
        }
        SpaceCommand::Stats { graph } => {
            let g = load_graph(graph)?;
            print_stats(&g, out)?;
        }
    }
    Ok(0)
}

fn usage(msg: String) -> Error {
    Error::Invalid(msg)
}

fn parse_variant(s: &str) -> Result<GraphVariant> {
    match s {
        "gh" | "gh_weighted" => Ok(GraphVariant::GhWeighted),
        "unweighted" | "unweighted_pruned" => Ok(GraphVariant::UnweightedPruned),
        "complete" | "complete_unweighted" => Ok(GraphVariant::CompleteUnweighted),
        _ => Err(Error::Invalid(format!("unknown graph variant {s:?}"))),
    }
}

fn load_graph(path: &Path) -> Result<GraphSpace> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read graph {}: {e}", path.display())))?;
    GraphSpace::from_json(&text)
}

fn print_stats(g: &GraphSpace, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "variant {}", g.variant().name())?;
    writeln!(out, "nodes {}", g.len())?;
    writeln!(out, "edges {}", g.edges().len())?;
    writeln!(out, "connected {}", g.is_connected())?;
    let mut sizes: Vec<usize> = g.nodes().iter().map(|s| s.len()).collect();
    sizes.dedup();
    for k in sizes {
        let count = g.nodes().iter().filter(|s| s.len() == k).count();
        writeln!(
            out,
            "size {k}: {count} nodes (enumeration {}, tree formula {})",
            space::level_count(k),
            space::tree_level_formula(k)
        )?;
    }
    let ws: Vec<String> = g.distinct_edge_weights().iter().map(|w| w.to_string()).collect();
    writeln!(out, "distinct_weights {} [{}]", ws.len(), ws.join(", "))?;
    Ok(())
}

fn cmd_bench(c: &BenchCommand, cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let BenchCommand::Synth { factors, truth, seed, out: path } = c;
    let b = &cfg.bench;
    let n = pick(*factors, b.factors, 13);
    let truth_text = truth.clone().or_else(|| b.truth.clone()).ok_or_else(|| usage("--truth is required".into()))?;
    let truth: Signature = truth_text.parse()?;
    if truth.len() != n {
        return Err(usage(format!("truth {truth} has {} factors, expected {n}", truth.len())));
    }
    let seed = pick(*seed, b.seed, 0);
    let candidates = space::enumerate_signatures(n, Some(n))?;
    let table = generate_objective(&truth, &candidates, seed)?;
    for l in table.near_zero() {
        writeln!(err, "warning: non-truth node {l} scores within 1e-12 of zero")?;
    }
    write_file(path, &table.to_json()?)?;
    writeln!(out, "truth {}", table.truth)?;
    writeln!(out, "entries {}", table.values.len())?;
    writeln!(out, "truth_value {}", table.values[&table.truth])?;
    let runner_up = table.values.iter().filter(|(k, _)| **k != table.truth).map(|(_, v)| *v).fold(f64::INFINITY, f64::min);
    writeln!(out, "second_best {runner_up}")?;
    Ok(0)
}

/// Parse `"1,2,5"` or the inclusive range `"0..9"`.
pub fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    let bad = || usage(format!("bad seed list {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if b < a {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    let seeds: Vec<u64> = s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
    if seeds.is_empty() {
        return Err(bad());
    }
    Ok(seeds)
}

fn parse_methods(list: &[String]) -> Result<Vec<Method>> {
    let mut ms = Vec::new();
    for m in list {
        let m: Method = m.parse()?;
        if !ms.contains(&m) {
            ms.push(m);
        }
    }
    if ms.is_empty() {
        return Err(usage("no methods given".into()));
    }
    Ok(ms)
}

fn cmd_search(a: &SearchRunArgs, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let sc = &cfg.search;
    let methods = match (&a.methods, &sc.methods) {
        (Some(s), _) => parse_methods(&s.split(',').map(|t| t.to_string()).collect::<Vec<_>>())?,
        (None, Some(v)) => parse_methods(v)?,
        (None, None) => Method::ALL.to_vec(),
    };
    let seeds = match (&a.seeds, &sc.seeds) {
        (Some(s), _) => parse_seeds(s)?,
        (None, Some(v)) if !v.is_empty() => v.clone(),
        (None, Some(_)) => return Err(usage("empty seed list".into())),
        (None, None) => (0..10).collect(),
    };
    let grid = log_grid(
        pick(a.beta_min, sc.beta_min, 1e-2),
        pick(a.beta_max, sc.beta_max, 1e2),
        pick(a.beta_count, sc.beta_count, 25),
    )?;
    let search = SearchConfig {
        budget: pick(a.budget, sc.budget, 60),
        n_init: pick(a.n_init, sc.n_init, 3),
        noise_variance: pick(a.noise_variance, sc.noise_variance, bo::DEFAULT_NOISE),
        beta_grid: grid.clone(),
        freeze_beta: a.freeze_beta || sc.freeze_beta.unwrap_or(false),
        stop_value: a.stop_value.or(sc.stop_value),
    };
    let graph = load_graph(&a.graph)?;
    search.validate(graph.len())?;
    let text = std::fs::read_to_string(&a.objective)
        .map_err(|e| usage(format!("cannot read objective {}: {e}", a.objective.display())))?;
    let table = crate::synthetic::ObjectiveTable::from_json(&text)?;
    let objective = table.objective_for(graph.labels())?;
    let ctx = SearchContext::new(&graph, &methods, &grid)?;
    let traces = bo::run_many(&ctx, &objective, &methods, &seeds, &search)?;
    let mut buf = Vec::new();
    bo::write_traces_csv(&mut buf, &traces)?;
    write_file(&a.out, std::str::from_utf8(&buf).expect("ascii csv"))?;
    let optimum = objective.iter().cloned().fold(f64::INFINITY, f64::min);
    writeln!(out, "optimum {optimum}")?;
    writeln!(out, "method runs found median_queries_to_optimum median_final_best")?;
    for s in bo::summarize(&traces, optimum, search.budget) {
        writeln!(
            out,
            "{} {} {} {} {}",
            s.method, s.runs, s.found, s.median_queries_to_optimum, s.median_final_best
        )?;
    }
    Ok(0)
}

fn cmd_diag(c: &DiagCommand, cfg: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    match c {
        DiagCommand::Embed { samples, seed, constants: ca } => {
            let e = constants(ca, cfg)?;
            let n = pick(*samples, cfg.diag.samples, 100);
            let r = gh::isometry_diagnostic(&e, n, pick(*seed, cfg.diag.seed, 0));
            writeln!(out, "samples {}", r.samples)?;
            writeln!(out, "max_relative_deviation {}", r.max_relative_deviation)?;
            writeln!(out, "positive_definite {}", r.all_positive_definite)?;
            writeln!(
                out,
                "note: the first coordinate holds eps at its constant value {}, so the map is not an exact isometry and the deviation is expected to be nonzero",
                e.eps
            )?;
            Ok(if r.all_positive_definite { 0 } else { 1 })
        }
        DiagCommand::Eig { size, seed } => {
            let n = pick(*size, cfg.diag.size, 50);
            if n == 0 {
                return Err(usage("size must be positive".into()));
            }
            let mut rng = crate::rng::seeded(pick(*seed, cfg.diag.seed, 0));
            let mut m = DMatrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let v: f64 = rng.random_range(-1.0..1.0);
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
            let e = eig_sym(&m)?;
            let rec = e.reconstruction_residual(&m);
            let orth = e.orthogonality_residual();
            writeln!(out, "size {n}")?;
            writeln!(out, "reconstruction_residual {rec:e}")?;
            writeln!(out, "orthogonality_residual {orth:e}")?;
            Ok(if rec <= 1e-7 && orth <= 1e-8 { 0 } else { 1 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let code = run(std::iter::once("nlgs").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn seeds() {
        assert_eq!(parse_seeds("0..3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_seeds("0..=2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_seeds("4,1").unwrap(), vec![4, 1]);
        assert!(parse_seeds("3..1").is_err());
        assert!(parse_seeds("a").is_err());
    }

    #[test]
    fn analytic_es_output() {
        let (code, out, _) = call(&["gh", "analytic-es"]);
        assert_eq!(code, 0);
        assert!(out.contains("lower 0.229849"));
        assert!(out.contains("upper 0.257184"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["gh", "estimate", "--pair", "e-s"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        let dir = tempfile::tempdir().unwrap();
        let g = dir.path().join("g.json");
        let (code, _, err) = call(&["space", "build", "--max-factors", "2", "--out", g.to_str().unwrap()]);
        assert_eq!(code, 2);
        assert!(err.contains("gh-table"));
    }

    #[test]
    fn eig_diag() {
        let (code, out, _) = call(&["diag", "eig", "--size", "12"]);
        assert_eq!(code, 0);
        assert!(out.contains("reconstruction_residual"));
    }
}
