//! Edge classes relative to a threshold pair `[lb, ub)`, computed from exact
//! shortest distances. Used to check that every shortest path in a band is
//! created by a relevant edge.

use crate::graph::{Graph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeClass {
    /// Both ends closer than `lb`: relaxing it can never help.
    Irrelevant,
    /// Near end below `lb`, far end at or beyond it.
    LongRelevant,
    /// Near end already at or beyond `lb`.
    ShortRelevant,
    /// `dist(u) + w` falls outside `[lb, ub)`.
    Unindexed,
}

impl EdgeClass {
    pub fn is_relevant(self) -> bool {
        matches!(self, EdgeClass::LongRelevant | EdgeClass::ShortRelevant)
    }
}

/// Class of the arc `(u, v, w)` as seen from `u`.
pub fn classify_arc(dist_u: f64, dist_v: f64, weight: f64, lb: f64, ub: f64) -> EdgeClass {
    let reach = dist_u + weight;
    if !(reach >= lb && reach < ub) {
        return EdgeClass::Unindexed;
    }
    if dist_u >= lb {
        EdgeClass::ShortRelevant
    } else if dist_v < lb {
        EdgeClass::Irrelevant
    } else {
        EdgeClass::LongRelevant
    }
}

/// Classes of all arcs, laid out like the graph's arc arrays.
pub fn classify_edges(graph: &Graph, true_dist: &[f64], lb: f64, ub: f64) -> Vec<EdgeClass> {
    let mut classes = Vec::with_capacity(graph.arc_count());
    for u in 0..graph.vertex_count() as VertexId {
        for (v, w) in graph.arcs(u) {
            classes.push(classify_arc(true_dist[u as usize], true_dist[v as usize], w, lb, ub));
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_cases() {
        // lsp(u) = 0, lsp(v) = 0.5, w lands in [1, 2)
        assert_eq!(classify_arc(0.0, 0.5, 1.2, 1.0, 2.0), EdgeClass::Irrelevant);
        assert_eq!(classify_arc(0.5, 1.5, 1.0, 1.0, 2.0), EdgeClass::LongRelevant);
        assert_eq!(classify_arc(1.2, 1.5, 0.3, 1.0, 2.0), EdgeClass::ShortRelevant);
        assert_eq!(classify_arc(0.0, 0.5, 0.5, 1.0, 2.0), EdgeClass::Unindexed);
        assert_eq!(classify_arc(1.2, 3.0, 1.0, 1.0, 2.0), EdgeClass::Unindexed);
        assert_eq!(classify_arc(f64::INFINITY, 0.0, 1.0, 1.0, 2.0), EdgeClass::Unindexed);
    }

    #[test]
    fn arc_layout_follows_graph() {
        let g = crate::graph::tests::t1();
        let dist = [0.0, 1.0, 2.0, 3.0];
        let classes = classify_edges(&g, &dist, 1.0, 2.0);
        assert_eq!(classes.len(), g.arc_count());
        // vertex 0: arcs (0,1,1.0) reaches 1.0 -> long relevant, (0,2,2.5) unindexed
        assert_eq!(&classes[..2], &[EdgeClass::LongRelevant, EdgeClass::Unindexed]);
    }
}
