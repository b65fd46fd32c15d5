//! Walk products: vertices are length-`k` walks in an expander `H`, two walks
//! adjacent when the union of their vertices is not independent in `g`.

use crate::beta1::expander::ExpanderCertificate;
use crate::error::{PlgError, Result};
use crate::graph::MultiGraph;
use crate::par::Exec;

pub const DEFAULT_WALK_CAP: usize = 200_000;
/// Edges contributed by walks that are adjacent to everything.
const MAX_DENSE_EDGES: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct WalkProduct {
    pub k: usize,
    /// Walk of each product vertex, lexicographic order.
    pub walks: Vec<Vec<usize>>,
    pub product: MultiGraph,
    /// Walks whose own vertex set is not independent in `g` (self-looped).
    pub bad_walks: usize,
}

/// `n·d^{k−1}`, or `None` on overflow.
pub fn walk_count(n: usize, d: usize, k: usize) -> Option<u128> {
    if k == 0 {
        return Some(0);
    }
    (0..k - 1).try_fold(n as u128, |acc, _| acc.checked_mul(d as u128))
}

/// All walks with `k` vertices in `h`, lexicographic by vertex sequence.
pub fn enumerate_walks(h: &MultiGraph, k: usize) -> Vec<Vec<usize>> {
    let adj = h.adjacency();
    let nb: Vec<Vec<usize>> = (0..h.vertex_count()).map(|v| adj.neighbors(v)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn extend(nb: &[Vec<usize>], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().expect("walk has a start");
        for &w in &nb[last] {
            cur.push(w);
            extend(nb, k, cur, out);
            cur.pop();
        }
    }
    if k == 0 {
        return out;
    }
    for s in 0..h.vertex_count() {
        cur.push(s);
        extend(&nb, k, &mut cur, &mut out);
        cur.pop();
    }
    out
}

fn check_inputs(g: &MultiGraph, h: &ExpanderCertificate, k: usize, cap: usize) -> Result<()> {
    if !g.is_simple() {
        return Err(PlgError::input("walk product needs a simple base graph"));
    }
    if g.vertex_count() != h.graph.vertex_count() {
        return Err(PlgError::input(format!(
            "base graph has {} vertices, expander has {}",
            g.vertex_count(),
            h.graph.vertex_count()
        )));
    }
    if k == 0 {
        return Err(PlgError::input("walk length k must be at least 1"));
    }
    match walk_count(g.vertex_count(), h.d, k) {
        Some(c) if c <= cap as u128 => Ok(()),
        Some(c) => Err(PlgError::Resource(format!(
            "walk product would have {c} vertices, cap is {cap}"
        ))),
        None => Err(PlgError::Resource("walk count overflows".into())),
    }
}

/// Walk vertex sets (sorted, deduplicated) and whether each is independent.
fn walk_sets(g: &MultiGraph, walks: &[Vec<usize>], exec: Exec) -> (Vec<Vec<usize>>, Vec<bool>) {
    let adj = g.adjacency();
    let nb: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| adj.neighbors(v)).collect();
    let sets: Vec<Vec<usize>> = exec.map(walks, |w| {
        let mut s = w.clone();
        s.sort_unstable();
        s.dedup();
        s
    });
    let good = exec.map(&sets, |s| {
        s.iter()
            .all(|&a| nb[a].iter().all(|b| s.binary_search(b).is_err()))
    });
    (sets, good)
}

/// For each listed walk, the listed walks after it that it is adjacent to,
/// considering only the independence of the union across the two walks.
fn cross_neighbors(
    g: &MultiGraph,
    sets: &[Vec<usize>],
    members: &[usize],
    exec: Exec,
) -> Vec<Vec<usize>> {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let nb: Vec<Vec<usize>> = (0..n).map(|v| adj.neighbors(v)).collect();
    // position in `members` of every listed walk containing base vertex b
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (pos, &w) in members.iter().enumerate() {
        for &b in &sets[w] {
            containing[b].push(pos);
        }
    }
    exec.map_range(0..members.len(), |pos| {
        let mut out: Vec<usize> = sets[members[pos]]
            .iter()
            .flat_map(|&a| nb[a].iter())
            .flat_map(|&b| containing[b].iter().copied())
            .filter(|&q| q > pos)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    })
}

/// The full walk product on `n·d^{k−1}` vertices.
pub fn walk_product(
    g: &MultiGraph,
    h: &ExpanderCertificate,
    k: usize,
    cap: usize,
    exec: Exec,
) -> Result<WalkProduct> {
    check_inputs(g, h, k, cap)?;
    let walks = enumerate_walks(&h.graph, k);
    let (sets, good) = walk_sets(g, &walks, exec);
    let total = walks.len();
    let bad: Vec<usize> = (0..total).filter(|&w| !good[w]).collect();
    let dense = bad.len() as u128 * total as u128;
    if dense > MAX_DENSE_EDGES {
        return Err(PlgError::Resource(format!(
            "{} non-independent walks would add about {dense} edges",
            bad.len()
        )));
    }
    let all: Vec<usize> = (0..total).collect();
    let nbrs = cross_neighbors(g, &sets, &all, exec);
    let mut product = MultiGraph::new(total);
    for (u, list) in nbrs.iter().enumerate() {
        for &v in list {
            if good[u] && good[v] {
                product.add_edge(u, v, 1)?;
            }
        }
    }
    for &b in &bad {
        product.add_edge(b, b, 1)?;
        for (v, &gv) in good.iter().enumerate() {
            if v != b && (gv || v > b) {
                product.add_edge(b, v, 1)?;
            }
        }
    }
    Ok(WalkProduct {
        k,
        walks,
        product,
        bad_walks: bad.len(),
    })
}

/// The product induced on walks whose own vertex set is independent.
/// Returns the kept walks (lexicographic) and the induced simple graph.
pub(crate) fn good_walk_product(
    g: &MultiGraph,
    h: &ExpanderCertificate,
    k: usize,
    cap: usize,
    exec: Exec,
) -> Result<(Vec<Vec<usize>>, MultiGraph)> {
    check_inputs(g, h, k, cap)?;
    let walks = enumerate_walks(&h.graph, k);
    let (sets, good) = walk_sets(g, &walks, exec);
    let keep: Vec<usize> = (0..walks.len()).filter(|&w| good[w]).collect();
    let nbrs = cross_neighbors(g, &sets, &keep, exec);
    let mut product = MultiGraph::new(keep.len());
    for (u, list) in nbrs.iter().enumerate() {
        for &v in list {
            product.add_edge(u, v, 1)?;
        }
    }
    let kept = keep.into_iter().map(|w| walks[w].clone()).collect();
    Ok((kept, product))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beta1::expander::random_regular_expander;
    use crate::mis::brute_force_mis;

    /// Direct rule on every pair of walks.
    fn naive_product(g: &MultiGraph, walks: &[Vec<usize>]) -> MultiGraph {
        let indep = |s: &[usize]| {
            s.iter()
                .all(|&a| s.iter().all(|&b| a == b || !g.has_edge(a, b)))
        };
        let mut p = MultiGraph::new(walks.len());
        for (i, u) in walks.iter().enumerate() {
            if !indep(u) {
                p.add_edge(i, i, 1).unwrap();
            }
            for (j, v) in walks.iter().enumerate().skip(i + 1) {
                let union: Vec<usize> = u.iter().chain(v).copied().collect();
                if !indep(&union) {
                    p.add_edge(i, j, 1).unwrap();
                }
            }
        }
        p
    }

    fn k5() -> ExpanderCertificate {
        random_regular_expander(5, 4, 0).unwrap()
    }

    #[test]
    fn counts_and_order() {
        let walks = enumerate_walks(&MultiGraph::complete(5), 2);
        assert_eq!(walks.len(), 20);
        assert_eq!(walks[0], vec![0, 1]);
        assert_eq!(walks[19], vec![4, 3]);
        assert_eq!(walk_count(5, 4, 3), Some(80));
    }

    #[test]
    fn empty_base_gives_edgeless_product() {
        let g = MultiGraph::new(5);
        let wp = walk_product(&g, &k5(), 2, DEFAULT_WALK_CAP, Exec::default()).unwrap();
        assert_eq!(wp.product.vertex_count(), 20);
        assert_eq!(wp.product.distinct_edge_count(), 0);
    }

    #[test]
    fn matches_naive_rule() {
        let graphs = [
            MultiGraph::cycle(5),
            MultiGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3)]).unwrap(),
            MultiGraph::complete(5),
        ];
        for g in &graphs {
            for k in 1..=3 {
                let wp = walk_product(g, &k5(), k, DEFAULT_WALK_CAP, Exec::Parallel).unwrap();
                assert_eq!(wp.product, naive_product(g, &wp.walks), "k={k}");
                let seq = walk_product(g, &k5(), k, DEFAULT_WALK_CAP, Exec::Sequential).unwrap();
                assert_eq!(wp, seq);
            }
        }
    }

    #[test]
    fn k1_preserves_independence_number() {
        let g = MultiGraph::cycle(5);
        let wp = walk_product(&g, &k5(), 1, DEFAULT_WALK_CAP, Exec::default()).unwrap();
        assert_eq!(wp.product, g);
        assert_eq!(brute_force_mis(&wp.product).unwrap(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let g = MultiGraph::new(5);
        match walk_product(&g, &k5(), 3, 50, Exec::default()) {
            Err(PlgError::Resource(msg)) => assert!(msg.contains("80")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn good_product_is_induced() {
        let g = MultiGraph::cycle(5);
        let full = walk_product(&g, &k5(), 2, DEFAULT_WALK_CAP, Exec::default()).unwrap();
        let (kept, pruned) = good_walk_product(&g, &k5(), 2, DEFAULT_WALK_CAP, Exec::default()).unwrap();
        let idx: Vec<usize> = kept
            .iter()
            .map(|w| full.walks.iter().position(|x| x == w).unwrap())
            .collect();
        assert_eq!(pruned, full.product.induced_subgraph(&idx).unwrap());
        assert_eq!(full.bad_walks + kept.len(), 20);
    }
}
