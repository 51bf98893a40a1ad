//! Latent geometry search over products of constant-curvature model spaces.
//!
//! The building blocks, bottom-up:
//!
//! - [`model_spaces`]: Euclidean plane, hyperboloid and hypersphere with
//!   exponential maps, geodesic distances and the hyperbolic chart chain.
//! - [`product`]: product-manifold signatures and the product metric.
//! - [`hausdorff`]: exact early-break Hausdorff distance between point clouds.
//! - [`gh`]: Gromov-Hausdorff upper bounds between unit balls via an explicit
//!   isometric embedding of the hyperbolic plane into `R^6`.
//! - [`space`]: the graph of candidate signatures weighted by inverse
//!   Gromov-Hausdorff distances.
//! - [`bo`]: Bayesian optimization on that graph with a diffusion kernel and
//!   expected improvement, plus random and geometry-agnostic baselines.
//! - [`synthetic`]: frozen-network benchmark objectives.
//! - [`cli`]: the `nlgs` command-line front end.

pub mod bo;
pub mod cli;
pub mod error;
pub mod gh;
pub mod hausdorff;
pub mod linalg;
pub mod model_spaces;
pub mod product;
pub mod quadrature;
pub mod rng;
pub mod space;
pub mod synthetic;

pub use error::{Error, Result};
