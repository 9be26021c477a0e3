use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Next length threshold after `lt`.
///
/// Starts from the exact distances below `lt` (just the source when `lt` is
/// 0), then runs relaxation rounds over arcs whose new path length is at
/// least `lt`. Whenever a vertex that was already expanded improves again,
/// its old distance plus its lightest arc bounds every path created from the
/// stale value; the smallest such bound is returned, `+inf` if no vertex
/// ever improved after expansion. Rounds scan vertices in ascending id order;
/// all relaxations of a round read the distances from the round's start, so
/// the result does not depend on that order.
pub fn nlt(graph: &Graph, source: VertexId, lt: f64, true_dist: &[f64]) -> Result<f64> {
    nlt_ordered(graph, source, lt, true_dist, |round| round.sort_unstable())
}

pub(crate) fn nlt_ordered(
    graph: &Graph,
    source: VertexId,
    lt: f64,
    true_dist: &[f64],
    mut order: impl FnMut(&mut Vec<VertexId>),
) -> Result<f64> {
    if lt.is_nan() || lt < 0.0 {
        return Err(Error::Argument(format!("threshold must be nonnegative, got {lt}")));
    }
    let n = graph.vertex_count();
    let mut frontier: Vec<VertexId> = if lt == 0.0 {
        vec![source]
    } else {
        (0..n as VertexId).filter(|&x| true_dist[x as usize] < lt).collect()
    };
    let mut dist = vec![f64::INFINITY; n];
    for &u in &frontier {
        dist[u as usize] = true_dist[u as usize];
    }
    let mut relaxed = vec![false; n];
    let mut queued = vec![false; n];
    let mut result = f64::INFINITY;
    while !frontier.is_empty() {
        order(&mut frontier);
        // every frontier vertex extends the distance it had when the round
        // began, as if the round ran in parallel
        let start: Vec<f64> = frontier.iter().map(|&u| dist[u as usize]).collect();
        let mut next: Vec<(VertexId, f64)> = Vec::new();
        for (&u, &du) in frontier.iter().zip(&start) {
            for (v, w) in graph.arcs(u) {
                let candidate = du + w;
                if candidate >= lt && candidate < dist[v as usize] {
                    if !queued[v as usize] {
                        queued[v as usize] = true;
                        next.push((v, dist[v as usize]));
                    }
                    dist[v as usize] = candidate;
                }
            }
        }
        for &(v, before) in &next {
            queued[v as usize] = false;
            if relaxed[v as usize] {
                let min_w = graph.min_arc_weight(v).unwrap_or(0.0);
                result = result.min(before + min_w);
            }
        }
        for &u in &frontier {
            relaxed[u as usize] = true;
        }
        frontier = next.into_iter().map(|(v, _)| v).collect();
    }
    Ok(result)
}

/// The threshold chain `0, nlt(0), nlt(nlt(0)), ...` up to and including the
/// first `+inf`. Fails if a threshold does not grow or the chain exceeds
/// `max_len` entries.
pub fn nlt_chain(graph: &Graph, source: VertexId, true_dist: &[f64], max_len: usize) -> Result<Vec<f64>> {
    let mut chain = vec![0.0];
    let mut t = 0.0;
    while t < f64::INFINITY {
        let next = nlt(graph, source, t, true_dist)?;
        if next <= t {
            return Err(Error::Validation(format!("threshold {next} does not exceed {t}")));
        }
        if chain.len() >= max_len {
            return Err(Error::Validation(format!("threshold chain longer than {max_len}")));
        }
        chain.push(next);
        t = next;
    }
    Ok(chain)
}
