use super::OracleResult;
use crate::graph::{Graph, VertexId};

/// Frontier-based Bellman-Ford: a vertex is rescanned in the round after its
/// distance improves.
pub fn bellman_ford(graph: &Graph, source: VertexId) -> OracleResult {
    let mut out = OracleResult::new(graph.vertex_count(), source);
    let mut queued = vec![false; graph.vertex_count()];
    let mut frontier = vec![source];
    while !frontier.is_empty() {
        out.rounds += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            queued[u as usize] = false;
        }
        for &u in &frontier {
            out.pops += 1;
            let du = out.dist[u as usize];
            for (v, w) in graph.arcs(u) {
                out.traversals += 1;
                if du + w < out.dist[v as usize] {
                    out.dist[v as usize] = du + w;
                    out.parent[v as usize] = Some(u);
                    out.relaxations += 1;
                    if !queued[v as usize] {
                        queued[v as usize] = true;
                        next.push(v);
                    }
                }
            }
        }
        frontier = next;
    }
    out
}
