//! Parallel single-source shortest paths on undirected graphs with positive
//! weights.
//!
//! The solver processes distance bands `[lb, ub)` one after another. The band
//! width comes from degree and weight statistics of the still-unsettled part
//! of the graph, and each band chooses between pushing from settled vertices
//! and pulling from unsettled ones to cut down on edge traversals.
//!
//! ```
//! use eic_sssp::{generate, preprocess, solve, EicConfig, GenSpec, DEFAULT_RATIO_NUM};
//!
//! let graph = generate(&GenSpec::rmat(8, 8, 1))?;
//! let prepared = preprocess(graph, DEFAULT_RATIO_NUM)?;
//! let out = solve(&prepared, 0, &EicConfig::default())?;
//! assert_eq!(out.dist[0], 0.0);
//! # Ok::<(), eic_sssp::Error>(())
//! ```

pub mod bench;
mod error;
pub mod generators;
pub mod graph;
pub mod heuristics;
pub mod reference;
pub mod solver;

pub use error::{Error, Result};
pub use generators::{converge_weights, discretize_weights, generate, GenKind, GenSpec};
pub use graph::{
    load_graph, preprocess, store_graph, DegreeStats, Edge, Format, Graph, PreparedGraph, VertexId,
    WeightQuantizer, DEFAULT_RATIO_NUM,
};
pub use heuristics::{StepParams, StepSchedule};
pub use solver::{solve, EicConfig, EicSolver, RunMetrics, SolveOutput};

/// The guide's chapters, so their examples run as doc tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/bands.md")]
    mod bands {}
    #[doc = include_str!("../../../book/src/push-pull.md")]
    mod push_pull {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
