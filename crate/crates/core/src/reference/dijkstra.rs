use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::OracleResult;
use crate::graph::{Graph, VertexId};

#[derive(PartialEq)]
struct Key(f64, VertexId);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Binary-heap Dijkstra with lazy deletion.
pub fn dijkstra(graph: &Graph, source: VertexId) -> OracleResult {
    let mut out = OracleResult::new(graph.vertex_count(), source);
    let mut done = vec![false; graph.vertex_count()];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse(Key(0.0, source)));
    while let Some(Reverse(Key(du, u))) = heap.pop() {
        if done[u as usize] {
            continue;
        }
        done[u as usize] = true;
        out.pops += 1;
        out.rounds += 1;
        for (v, w) in graph.arcs(u) {
            out.traversals += 1;
            let candidate = du + w;
            if candidate < out.dist[v as usize] {
                out.dist[v as usize] = candidate;
                out.parent[v as usize] = Some(u);
                out.relaxations += 1;
                heap.push(Reverse(Key(candidate, v)));
            }
        }
    }
    out
}

/// Smallest number of edges on any shortest path to each vertex, given exact
/// distances; `None` for unreached vertices.
pub fn min_hop_counts(graph: &Graph, source: VertexId, dist: &[f64]) -> Vec<Option<u32>> {
    let mut order: Vec<VertexId> = (0..graph.vertex_count() as VertexId)
        .filter(|&v| dist[v as usize].is_finite())
        .collect();
    order.sort_by(|&a, &b| dist[a as usize].total_cmp(&dist[b as usize]));
    let mut hops = vec![None; graph.vertex_count()];
    hops[source as usize] = Some(0);
    for v in order {
        if v == source {
            continue;
        }
        // positive weights: every predecessor on a shortest path comes earlier
        hops[v as usize] = graph
            .arcs(v)
            .filter(|&(u, w)| dist[u as usize] + w == dist[v as usize])
            .filter_map(|(u, _)| hops[u as usize])
            .min()
            .map(|h| h + 1);
    }
    hops
}
