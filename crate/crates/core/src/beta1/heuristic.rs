use crate::graph::{MultiGraph, VertexSet};

/// Greedy pass over degree-1 loop-free vertices in id order, keeping each
/// one with no chosen neighbor. At least half of them survive.
pub fn degree_one_heuristic(g: &MultiGraph) -> VertexSet {
    let adj = g.adjacency();
    let deg = g.degrees();
    let mut chosen = vec![false; g.vertex_count()];
    for v in 0..g.vertex_count() {
        if deg[v] != 1 || adj.has_loop(v) {
            continue;
        }
        if adj.neighbors(v).iter().all(|&w| !chosen[w]) {
            chosen[v] = true;
        }
    }
    VertexSet::new((0..g.vertex_count()).filter(|&v| chosen[v]))
}
