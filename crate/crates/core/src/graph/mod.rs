//! Undirected weighted graphs in compressed adjacency form.
//!
//! Every undirected edge `{u, v}` is stored as the two arcs `(u, v)` and
//! `(v, u)`. Each vertex's arcs are kept sorted by ascending weight, which lets
//! the solver select all arcs in a weight window with two binary searches.

mod io;
mod prep;

pub use io::{load_graph, read_binary, read_text, store_graph, write_binary, write_text, Format};
pub use prep::{preprocess, DegreeStats, PreparedGraph, WeightQuantizer, DEFAULT_RATIO_NUM};

use crate::error::{Error, Result};

/// Vertex identifier. Graphs are limited to `u32::MAX` vertices.
pub type VertexId = u32;

/// One undirected edge as it appears in an input file.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: f64,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId, weight: f64) -> Self {
        Edge { u, v, weight }
    }
}

/// An immutable undirected graph.
///
/// Duplicate edges and self-loops are kept exactly as given. A self-loop on
/// `u` contributes two arcs to `u`, so degrees always sum to `2 * edge_count`.
#[derive(Clone, Debug)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    weights: Vec<f64>,
    max_weight: f64,
}

impl Graph {
    /// Builds a graph from an undirected edge list, validating ids and weights.
    pub fn from_edges(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        if vertex_count > VertexId::MAX as usize {
            return Err(Error::Validation(format!(
                "vertex count {vertex_count} exceeds the 32-bit id space"
            )));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.u as usize >= vertex_count || e.v as usize >= vertex_count {
                return Err(Error::Validation(format!(
                    "edge {i} ({}, {}) references a vertex outside 0..{vertex_count}",
                    e.u, e.v
                )));
            }
            if !(e.weight.is_finite() && e.weight > 0.0) {
                return Err(Error::Validation(format!(
                    "edge {i} ({}, {}) has weight {}; weights must be positive and finite",
                    e.u, e.v, e.weight
                )));
            }
        }
        Ok(Self::build(vertex_count, edges))
    }

    fn build(vertex_count: usize, edges: Vec<Edge>) -> Self {
        let mut degree = vec![0usize; vertex_count];
        for e in &edges {
            degree[e.u as usize] += 1;
            degree[e.v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(vertex_count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let arc_count = *offsets.last().unwrap();

        let mut cursor = offsets[..vertex_count].to_vec();
        let mut arcs = vec![(0.0f64, 0 as VertexId); arc_count];
        for e in &edges {
            arcs[cursor[e.u as usize]] = (e.weight, e.v);
            cursor[e.u as usize] += 1;
            arcs[cursor[e.v as usize]] = (e.weight, e.u);
            cursor[e.v as usize] += 1;
        }
        for u in 0..vertex_count {
            arcs[offsets[u]..offsets[u + 1]]
                .sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        }
        let (weights, targets): (Vec<f64>, Vec<VertexId>) = arcs.into_iter().unzip();
        let max_weight = weights.iter().copied().fold(0.0, f64::max);

        Graph {
            vertex_count,
            edges,
            offsets,
            targets,
            weights,
            max_weight,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    /// Largest edge weight, `0.0` for a graph without edges.
    pub fn max_weight(&self) -> f64 {
        self.max_weight
    }

    /// The undirected edge list in input order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, u: VertexId) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    /// Neighbor ids of `u`, ordered by ascending arc weight.
    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        let u = u as usize;
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Arc weights of `u`, ascending; parallel to [`Graph::neighbors`].
    pub fn arc_weights(&self, u: VertexId) -> &[f64] {
        let u = u as usize;
        &self.weights[self.offsets[u]..self.offsets[u + 1]]
    }

    /// `(target, weight)` pairs of `u` in weight order.
    pub fn arcs(&self, u: VertexId) -> impl Iterator<Item = (VertexId, f64)> + '_ {
        self.neighbors(u)
            .iter()
            .copied()
            .zip(self.arc_weights(u).iter().copied())
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Lightest arc weight of `u`, if it has any arcs.
    pub fn min_arc_weight(&self, u: VertexId) -> Option<f64> {
        self.arc_weights(u).first().copied()
    }

    /// Vertices with at least one incident arc.
    pub fn non_isolated_count(&self) -> usize {
        (0..self.vertex_count as VertexId)
            .filter(|&u| self.degree(u) > 0)
            .count()
    }

    /// Returns a copy with every edge weight replaced by `f(weight)`.
    ///
    /// The transform runs once per undirected edge, so both arcs of an edge
    /// always carry the same new weight.
    pub fn map_weights(&self, mut f: impl FnMut(f64) -> f64) -> Result<Graph> {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.u, e.v, f(e.weight)))
            .collect();
        Graph::from_edges(self.vertex_count, edges)
    }

    /// True when every weight is an integer; oracle comparisons are then exact.
    pub fn has_integer_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight.fract() == 0.0)
    }
}
