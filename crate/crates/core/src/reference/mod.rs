//! Sequential baselines and oracles.
//!
//! [`dijkstra`] is the ground truth everything else is checked against.
//! [`bellman_ford`] and [`delta_stepping`] are the baselines the benchmark
//! harness compares with. [`nlt`] replays the next-length-threshold analysis
//! on small graphs.

mod bellman_ford;
mod delta;
mod dijkstra;
mod nlt;

pub use bellman_ford::bellman_ford;
pub use delta::delta_stepping;
pub use dijkstra::{dijkstra, min_hop_counts};
pub use nlt::{nlt, nlt_chain};

use crate::graph::VertexId;

/// Output of a sequential solver.
#[derive(Clone, Debug, Default)]
pub struct OracleResult {
    pub dist: Vec<f64>,
    pub parent: Vec<Option<VertexId>>,
    /// Vertices whose arcs were scanned, with repetition.
    pub pops: u64,
    /// Successful distance improvements.
    pub relaxations: u64,
    /// Arcs scanned.
    pub traversals: u64,
    /// Sequential phases: heap pops for Dijkstra, frontier rounds for the others.
    pub rounds: u64,
}

impl OracleResult {
    fn new(vertex_count: usize, source: VertexId) -> Self {
        let mut dist = vec![f64::INFINITY; vertex_count];
        let mut parent = vec![None; vertex_count];
        dist[source as usize] = 0.0;
        parent[source as usize] = Some(source);
        OracleResult {
            dist,
            parent,
            ..Default::default()
        }
    }
}

/// Checks that `parent` describes a shortest-path tree for `dist`: every
/// reached vertex other than `source` has an arc from its parent whose
/// weight closes the distance. `rel_tol` bounds the accepted mismatch.
pub fn parents_valid(
    graph: &crate::Graph,
    source: VertexId,
    dist: &[f64],
    parent: &[Option<VertexId>],
    rel_tol: f64,
) -> bool {
    (0..graph.vertex_count() as VertexId).all(|v| {
        if v == source {
            return dist[v as usize] == 0.0 && parent[v as usize] == Some(source);
        }
        let d = dist[v as usize];
        match parent[v as usize] {
            None => d == f64::INFINITY,
            Some(p) => {
                let dp = dist[p as usize];
                graph.arcs(v).any(|(t, w)| {
                    t == p && ((dp + w) - d).abs() <= rel_tol * d.max(1.0)
                })
            }
        }
    })
}
