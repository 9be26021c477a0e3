//! Synthetic graphs and the weight transforms used to build test corpora.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, VertexId};

/// Graph500 quadrant probabilities.
pub const GRAPH500_PROBS: [f64; 4] = [0.57, 0.19, 0.19, 0.05];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Recursive-matrix (Kronecker) edges.
    Rmat,
    /// Uniformly random endpoints.
    Urand,
    /// 2D lattice, a high-diameter stand-in for road networks. Ignores
    /// `edge_factor`.
    Grid,
}

impl std::str::FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rmat" => Ok(GenKind::Rmat),
            "urand" => Ok(GenKind::Urand),
            "grid" => Ok(GenKind::Grid),
            _ => Err(Error::Argument(format!("unknown graph kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    /// `2^scale` vertices.
    pub scale: u32,
    /// Edges per vertex (rmat and urand).
    pub edge_factor: u32,
    pub seed: u64,
    /// Quadrant probabilities `(a, b, c, d)` for rmat.
    pub probs: [f64; 4],
}

impl GenSpec {
    pub fn new(kind: GenKind, scale: u32, edge_factor: u32, seed: u64) -> Self {
        GenSpec {
            kind,
            scale,
            edge_factor,
            seed,
            probs: GRAPH500_PROBS,
        }
    }

    pub fn rmat(scale: u32, edge_factor: u32, seed: u64) -> Self {
        Self::new(GenKind::Rmat, scale, edge_factor, seed)
    }

    pub fn urand(scale: u32, edge_factor: u32, seed: u64) -> Self {
        Self::new(GenKind::Urand, scale, edge_factor, seed)
    }

    pub fn grid(scale: u32, seed: u64) -> Self {
        Self::new(GenKind::Grid, scale, 2, seed)
    }

    pub fn with_probs(mut self, probs: [f64; 4]) -> Self {
        self.probs = probs;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.scale == 0 || self.scale > 31 {
            return Err(Error::Argument(format!("scale must be in 1..=31, got {}", self.scale)));
        }
        if self.edge_factor == 0 {
            return Err(Error::Argument("edge_factor must be positive".into()));
        }
        let sum: f64 = self.probs.iter().sum();
        if self.probs.iter().any(|p| p.is_nan() || *p < 0.0) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Argument(format!("rmat probabilities {:?} must sum to 1", self.probs)));
        }
        Ok(())
    }
}

/// Weight uniform in `(0, 1]`.
fn unit_weight(rng: &mut impl Rng) -> f64 {
    1.0 - rng.gen::<f64>()
}

/// Builds the graph described by `spec`. The same spec always yields the
/// same graph.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = 1usize << spec.scale;
    let m = n * spec.edge_factor as usize;
    let edges = match spec.kind {
        GenKind::Rmat => {
            let [a, b, c, _] = spec.probs;
            // random relabeling, so vertex ids carry no degree information
            let mut label: Vec<VertexId> = (0..n as VertexId).collect();
            label.shuffle(&mut rng);
            (0..m)
                .map(|_| {
                    let (mut u, mut v) = (0usize, 0usize);
                    for _ in 0..spec.scale {
                        let r: f64 = rng.gen();
                        let (du, dv) = if r < a {
                            (0, 0)
                        } else if r < a + b {
                            (0, 1)
                        } else if r < a + b + c {
                            (1, 0)
                        } else {
                            (1, 1)
                        };
                        u = (u << 1) | du;
                        v = (v << 1) | dv;
                    }
                    Edge::new(label[u], label[v], unit_weight(&mut rng))
                })
                .collect()
        }
        GenKind::Urand => (0..m)
            .map(|_| {
                let u = rng.gen_range(0..n) as VertexId;
                let v = rng.gen_range(0..n) as VertexId;
                Edge::new(u, v, unit_weight(&mut rng))
            })
            .collect(),
        GenKind::Grid => {
            let cols = 1usize << (spec.scale - spec.scale / 2);
            let rows = n / cols;
            let mut edges = Vec::with_capacity(2 * n);
            for r in 0..rows {
                for c in 0..cols {
                    let u = (r * cols + c) as VertexId;
                    if c + 1 < cols {
                        edges.push(Edge::new(u, u + 1, 0.5 + 0.5 * unit_weight(&mut rng)));
                    }
                    if r + 1 < rows {
                        edges.push(Edge::new(u, u + cols as VertexId, 0.5 + 0.5 * unit_weight(&mut rng)));
                    }
                }
            }
            edges
        }
    };
    Graph::from_edges(n, edges)
}

fn check_unit_weights(graph: &Graph) -> Result<()> {
    match graph.edges().iter().find(|e| !(e.weight > 0.0 && e.weight <= 1.0)) {
        Some(e) => Err(Error::Argument(format!(
            "weight {} of edge ({}, {}) is outside (0, 1]",
            e.weight, e.u, e.v
        ))),
        None => Ok(()),
    }
}

/// Maps a `(0, 1]` weight onto the integers `1..=2^power - 1`.
pub fn discretize_weight(w: f64, power: u32) -> f64 {
    let top = (1u64 << power) as f64 - 1.0;
    (1.0 + w * (top - 1.0)).round().clamp(1.0, top)
}

/// Bends a `(0, 1]` weight toward `pivot`: half of uniform inputs land below it.
pub fn converge_weight(w: f64, pivot: f64) -> f64 {
    let s = (1.0 - 2.0 * w).powi(2);
    let out = if w <= 0.5 {
        pivot - pivot * s
    } else {
        pivot + (1.0 - pivot) * s
    };
    out.max(f64::MIN_POSITIVE)
}

/// Integer-weight variant of a `(0, 1]`-weighted graph.
pub fn discretize_weights(graph: &Graph, power: u32) -> Result<Graph> {
    if !(1..=52).contains(&power) {
        return Err(Error::Argument(format!("power must be in 1..=52, got {power}")));
    }
    check_unit_weights(graph)?;
    graph.map_weights(|w| discretize_weight(w, power))
}

/// Bell-shaped variant of a `(0, 1]`-weighted graph, peaked at `pivot`.
pub fn converge_weights(graph: &Graph, pivot: f64) -> Result<Graph> {
    if !(pivot > 0.0 && pivot < 1.0) {
        return Err(Error::Argument(format!("pivot must be in (0, 1), got {pivot}")));
    }
    check_unit_weights(graph)?;
    graph.map_weights(|w| converge_weight(w, pivot))
}
