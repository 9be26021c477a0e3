use std::collections::BTreeMap;

use super::OracleResult;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Sequential delta-stepping with light/heavy arc phases. Buckets are kept
/// sparse, so a tiny `delta` on a long graph costs memory only for buckets
/// that are actually used.
pub fn delta_stepping(graph: &Graph, source: VertexId, delta: f64) -> Result<OracleResult> {
    if delta.is_nan() || delta <= 0.0 || delta.is_infinite() {
        return Err(Error::Argument(format!("delta must be positive, got {delta}")));
    }
    let mut out = OracleResult::new(graph.vertex_count(), source);
    let mut buckets: BTreeMap<u64, Vec<VertexId>> = BTreeMap::new();
    buckets.insert(0, vec![source]);
    let index = |d: f64| (d / delta).floor() as u64;

    fn relax(
        out: &mut OracleResult,
        buckets: &mut BTreeMap<u64, Vec<VertexId>>,
        index: impl Fn(f64) -> u64,
        u: VertexId,
        v: VertexId,
        candidate: f64,
    ) {
        out.traversals += 1;
        if candidate < out.dist[v as usize] {
            out.dist[v as usize] = candidate;
            out.parent[v as usize] = Some(u);
            out.relaxations += 1;
            buckets.entry(index(candidate)).or_default().push(v);
        }
    }

    while let Some((&i, _)) = buckets.iter().next() {
        let mut settled = Vec::new();
        // light phase: rerun until the bucket stops refilling
        while let Some(members) = buckets.remove(&i) {
            out.rounds += 1;
            let mut members: Vec<VertexId> = members
                .into_iter()
                .filter(|&u| index(out.dist[u as usize]) == i)
                .collect();
            members.sort_unstable();
            members.dedup();
            for &u in &members {
                out.pops += 1;
                let du = out.dist[u as usize];
                let weights = graph.arc_weights(u);
                let light = weights.partition_point(|&w| w <= delta);
                for (&v, &w) in graph.neighbors(u)[..light].iter().zip(weights) {
                    relax(&mut out, &mut buckets, index, u, v, du + w);
                }
            }
            settled.extend(members);
        }
        out.rounds += 1;
        settled.sort_unstable();
        settled.dedup();
        for u in settled {
            let du = out.dist[u as usize];
            let weights = graph.arc_weights(u);
            let light = weights.partition_point(|&w| w <= delta);
            for (&v, &w) in graph.neighbors(u)[light..].iter().zip(&weights[light..]) {
                relax(&mut out, &mut buckets, index, u, v, du + w);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::t1;
    use crate::reference::dijkstra;

    #[test]
    fn t1_with_various_deltas() {
        let expected = dijkstra(&t1(), 0).dist;
        for delta in [0.1, 0.5, 1.0, 2.5, 100.0] {
            assert_eq!(delta_stepping(&t1(), 0, delta).unwrap().dist, expected, "delta {delta}");
        }
    }

    #[test]
    fn nonpositive_delta_rejected() {
        assert!(matches!(delta_stepping(&t1(), 0, 0.0), Err(Error::Argument(_))));
        assert!(matches!(delta_stepping(&t1(), 0, -1.0), Err(Error::Argument(_))));
    }
}
