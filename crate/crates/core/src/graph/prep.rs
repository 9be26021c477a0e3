//! One-time preprocessing shared by every solve on a graph: the weight
//! quantile table and the degree statistics.

use std::time::{Duration, Instant};

use super::{Graph, VertexId};
use crate::error::{Error, Result};
use crate::heuristics::balanced_degree_threshold;

/// Default number of quantile cells (2^12).
pub const DEFAULT_RATIO_NUM: usize = 1 << 12;

/// Lookup table from a quantile ratio to an edge-weight threshold.
///
/// Cell `x` holds the smallest edge weight `t` such that at least
/// `x / (ratio_num - 1)` of all edges weigh `t` or less.
#[derive(Clone, Debug)]
pub struct WeightQuantizer {
    table: Vec<f64>,
}

impl WeightQuantizer {
    /// Builds the table from one weight per edge (or per arc; doubling every
    /// weight leaves all fractions unchanged).
    pub fn from_weights(mut weights: Vec<f64>, ratio_num: usize) -> Result<Self> {
        if ratio_num < 2 {
            return Err(Error::Argument(format!(
                "ratio_num must be at least 2, got {ratio_num}"
            )));
        }
        if weights.is_empty() {
            return Err(Error::EmptyWeights);
        }
        weights.sort_unstable_by(f64::total_cmp);
        let m = weights.len() as u128;
        let cells = (ratio_num - 1) as u128;
        let table = (0..ratio_num as u128)
            .map(|x| {
                // smallest k with k / m >= x / cells, in exact integer arithmetic
                let k = (x * m).div_ceil(cells);
                weights[(k.max(1) - 1) as usize]
            })
            .collect();
        Ok(WeightQuantizer { table })
    }

    pub fn ratio_num(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    /// `maxW(G, 1)`, the largest edge weight.
    pub fn max_weight(&self) -> f64 {
        *self.table.last().unwrap()
    }

    /// Weight threshold for the quantile `ratio`.
    pub fn max_w(&self, ratio: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&ratio) {
            return Err(Error::Argument(format!("ratio {ratio} outside [0, 1]")));
        }
        Ok(self.lookup(ratio))
    }

    pub(crate) fn lookup(&self, ratio: f64) -> f64 {
        let cells = (self.table.len() - 1) as f64;
        let idx = (ratio.clamp(0.0, 1.0) * cells).round() as usize;
        self.table[idx]
    }
}

/// Degree histogram of the whole graph plus `highD(0)`.
#[derive(Clone, Debug)]
pub struct DegreeStats {
    /// `2 * |E|`.
    pub total_degree: u64,
    /// `histogram[d]` is the number of vertices of degree `d`.
    pub histogram: Vec<u64>,
    /// Balanced degree threshold over all vertices; `0` if the graph has no edges.
    pub high_d0: u32,
}

impl DegreeStats {
    pub fn new(graph: &Graph) -> Self {
        let max_degree = (0..graph.vertex_count() as VertexId)
            .map(|u| graph.degree(u))
            .max()
            .unwrap_or(0);
        let mut histogram = vec![0u64; max_degree + 1];
        for u in 0..graph.vertex_count() as VertexId {
            histogram[graph.degree(u)] += 1;
        }
        DegreeStats {
            total_degree: graph.arc_count() as u64,
            high_d0: balanced_degree_threshold(&histogram).unwrap_or(0),
            histogram,
        }
    }

    pub fn max_degree(&self) -> usize {
        self.histogram.len() - 1
    }
}

/// A graph together with everything the solver needs precomputed.
#[derive(Clone, Debug)]
pub struct PreparedGraph {
    pub graph: Graph,
    pub quantizer: WeightQuantizer,
    pub degrees: DegreeStats,
    /// Wall time spent on quantization and statistics, kept apart from solve time.
    pub preprocess_time: Duration,
}

/// Builds the quantile table and degree statistics.
///
/// Adjacency lists are already weight-sorted by [`Graph`] construction, so this
/// only checks that invariant. Fails on a graph without edges.
pub fn preprocess(graph: Graph, ratio_num: usize) -> Result<PreparedGraph> {
    let start = Instant::now();
    debug_assert!((0..graph.vertex_count() as VertexId)
        .all(|u| graph.arc_weights(u).windows(2).all(|w| w[0] <= w[1])));
    let weights = graph.edges().iter().map(|e| e.weight).collect();
    let quantizer = WeightQuantizer::from_weights(weights, ratio_num)?;
    let degrees = DegreeStats::new(&graph);
    Ok(PreparedGraph {
        graph,
        quantizer,
        degrees,
        preprocess_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::t1;
    use crate::graph::Edge;
    use proptest::prelude::*;

    /// Brute-force empirical quantile: scan candidate weights in ascending
    /// order and return the first whose cumulative fraction reaches `ratio`.
    fn brute_quantile(weights: &[f64], ratio: f64) -> f64 {
        let mut sorted = weights.to_vec();
        sorted.sort_by(f64::total_cmp);
        let m = sorted.len() as f64;
        for &t in &sorted {
            let frac = sorted.iter().filter(|&&w| w <= t).count() as f64 / m;
            if frac >= ratio - 1e-12 {
                return t;
            }
        }
        unreachable!()
    }

    #[test]
    fn table_for_four_weights() {
        let q = WeightQuantizer::from_weights(vec![4.0, 2.0, 1.0, 3.0], 5).unwrap();
        assert_eq!(q.table(), &[1.0, 1.0, 2.0, 3.0, 4.0]);
        // matches the brute-force oracle cell by cell
        for (x, &t) in q.table().iter().enumerate() {
            assert_eq!(t, brute_quantile(&[1.0, 2.0, 3.0, 4.0], x as f64 / 4.0));
        }
    }

    #[test]
    fn constant_weights() {
        let q = WeightQuantizer::from_weights(vec![0.5; 7], 16).unwrap();
        assert!(q.table().iter().all(|&t| t == 0.5));
    }

    #[test]
    fn max_w_endpoints_and_quantile() {
        let q = WeightQuantizer::from_weights(vec![1.0, 1.0, 1.0, 4.0], DEFAULT_RATIO_NUM).unwrap();
        assert_eq!(q.max_w(1.0).unwrap(), 4.0);
        assert_eq!(q.max_w(0.0).unwrap(), 1.0);
        assert_eq!(q.max_w(0.75).unwrap(), brute_quantile(&[1.0, 1.0, 1.0, 4.0], 0.75));
        assert_eq!(q.max_w(0.75).unwrap(), 1.0);
        assert!(matches!(q.max_w(1.5), Err(Error::Argument(_))));
        assert!(matches!(q.max_w(-0.1), Err(Error::Argument(_))));
    }

    #[test]
    fn empty_graph_is_rejected() {
        let g = Graph::from_edges(3, vec![]).unwrap();
        assert!(matches!(preprocess(g, 16), Err(Error::EmptyWeights)));
    }

    #[test]
    fn t1_high_d0() {
        let p = preprocess(t1(), DEFAULT_RATIO_NUM).unwrap();
        assert_eq!(p.degrees.high_d0, 3);
        assert_eq!(p.degrees.total_degree, 8);
        assert_eq!(p.degrees.histogram, vec![0, 1, 2, 1]);
        assert_eq!(p.quantizer.max_weight(), 2.5);
    }

    #[test]
    fn histogram_counts_all_vertices() {
        let g = Graph::from_edges(6, vec![Edge::new(0, 1, 1.0), Edge::new(0, 2, 1.0)]).unwrap();
        let d = DegreeStats::new(&g);
        assert_eq!(d.histogram.iter().sum::<u64>(), 6);
    }

    proptest! {
        #[test]
        fn table_matches_brute_force_and_slack(
            weights in prop::collection::vec(1e-6f64..10.0, 1..60),
            ratio_num in 2usize..64,
            ratio in 0.0f64..=1.0,
        ) {
            let q = WeightQuantizer::from_weights(weights.clone(), ratio_num).unwrap();
            let cells = (ratio_num - 1) as f64;
            for (x, &t) in q.table().iter().enumerate() {
                prop_assert_eq!(t, brute_quantile(&weights, x as f64 / cells));
            }
            prop_assert!(q.table().windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(q.max_weight(), weights.iter().copied().fold(0.0, f64::max));

            let t = q.max_w(ratio).unwrap();
            let frac = weights.iter().filter(|&&w| w <= t).count() as f64 / weights.len() as f64;
            prop_assert!(frac >= ratio - 1.0 / cells - 1e-12);
        }
    }
}
