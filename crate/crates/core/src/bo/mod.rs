//! Bayesian optimization over the nodes of a search graph.

pub mod gp;
pub mod kernel;
pub mod search;

pub use gp::{
    expected_improvement, fit_hyperparameters, gp_posterior, grid_likelihoods, refit_signal, GpState, GridFit,
    DEFAULT_NOISE,
};
pub use kernel::{default_beta_grid, log_grid, DiffusionKernel, GraphEigen, KernelCache};
pub use search::{
    mean_curve, run_many, run_search, summarize, write_traces_csv, Method, MethodSummary, RunTrace, SearchConfig,
    SearchContext, TraceRow,
};
