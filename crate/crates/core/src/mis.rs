//! Exact maximum independent set by bitset branch and bound, plus a
//! brute-force enumerator used as a test oracle.
//!
//! Vertices with a self-loop are never independent and are dropped up front.
//! The remaining graph is split into connected components, each solved on
//! its own (in parallel under [`Exec::Parallel`]). The search branches on a
//! vertex of maximum degree among the candidates, include-branch first, and
//! prunes with a greedy clique cover of the candidate set.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{PlgError, Result};
use crate::graph::{MultiGraph, VertexSet};
use crate::par::Exec;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Components above this size are refused (the bitset adjacency is quadratic).
const MAX_COMPONENT: usize = 60_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub size: usize,
    pub witness: VertexSet,
    pub optimal: bool,
    pub nodes_explored: u64,
    pub time_ms: u64,
}

/// Loop-free vertices grouped into connected components, each ascending,
/// components ordered by smallest member.
fn components(g: &MultiGraph) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if adj.has_loop(v) {
                Vec::new()
            } else {
                adj.neighbors(v).into_iter().filter(|&w| !adj.has_loop(w)).collect()
            }
        })
        .collect();
    let mut comp_of = vec![usize::MAX; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if adj.has_loop(s) || comp_of[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        comp_of[s] = id;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            i += 1;
            for &w in &neighbors[v] {
                if comp_of[w] == usize::MAX {
                    comp_of[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    (comps, neighbors)
}

fn local_adjacency(members: &[usize], neighbors: &[Vec<usize>]) -> Vec<Bits> {
    let k = members.len();
    members
        .iter()
        .map(|&v| {
            let mut b = Bits::new(k);
            for w in &neighbors[v] {
                if let Ok(j) = members.binary_search(w) {
                    b.insert(j);
                }
            }
            b
        })
        .collect()
}

struct Search<'a> {
    adj: &'a [Bits],
    budget: u64,
    nodes: u64,
    best: Vec<usize>,
    aborted: bool,
}

impl Search<'_> {
    fn clique_cover(&self, p: &Bits) -> usize {
        let mut rest = p.clone();
        let mut cliques = 0;
        while let Some(v) = rest.first() {
            rest.remove(v);
            let mut cand = rest.and(&self.adj[v]);
            while let Some(u) = cand.first() {
                rest.remove(u);
                cand = cand.and(&self.adj[u]);
            }
            cliques += 1;
        }
        cliques
    }

    fn expand(&mut self, mut p: Bits, cur: &mut Vec<usize>) {
        if self.nodes >= self.budget {
            self.aborted = true;
            return;
        }
        self.nodes += 1;
        let base = cur.len();
        let mut pivot = None;
        let mut max_deg = 0;
        let members: Vec<usize> = p.iter().collect();
        for v in members {
            let d = p.and_count(&self.adj[v]);
            if d == 0 {
                cur.push(v);
                p.remove(v);
            } else if d > max_deg {
                max_deg = d;
                pivot = Some(v);
            }
        }
        match pivot {
            None => {
                if cur.len() > self.best.len() {
                    self.best = cur.clone();
                }
            }
            Some(v) => {
                if cur.len() + self.clique_cover(&p) > self.best.len() {
                    let mut with = p.and_not(&self.adj[v]);
                    with.remove(v);
                    cur.push(v);
                    self.expand(with, cur);
                    cur.pop();
                    if !self.aborted {
                        p.remove(v);
                        self.expand(p, cur);
                    }
                }
            }
        }
        cur.truncate(base);
    }
}

/// Min-degree greedy independent set, as a starting incumbent.
fn greedy(adj: &[Bits]) -> Vec<usize> {
    let mut p = Bits::full(adj.len());
    let mut out = Vec::new();
    while !p.is_empty() {
        let v = p
            .iter()
            .min_by_key(|&v| (p.and_count(&adj[v]), v))
            .expect("non-empty");
        out.push(v);
        p = p.and_not(&adj[v]);
        p.remove(v);
    }
    out
}

fn solve_component(adj: &[Bits], budget: u64) -> (Vec<usize>, bool, u64) {
    if adj.len() == 1 {
        return (vec![0], true, 1);
    }
    let mut s = Search {
        adj,
        budget,
        nodes: 0,
        best: greedy(adj),
        aborted: false,
    };
    let mut cur = Vec::new();
    s.expand(Bits::full(adj.len()), &mut cur);
    (s.best, !s.aborted, s.nodes)
}

/// Maximum independent set with a per-component node budget.
pub fn exact_mis(g: &MultiGraph, budget: u64) -> Result<SolveResult> {
    exact_mis_with(g, budget, Exec::default())
}

pub fn exact_mis_with(g: &MultiGraph, budget: u64, exec: Exec) -> Result<SolveResult> {
    let start = Instant::now();
    let (comps, neighbors) = components(g);
    if let Some(c) = comps.iter().find(|c| c.len() > MAX_COMPONENT) {
        return Err(PlgError::Resource(format!(
            "connected component of {} vertices exceeds the exact-solver limit {MAX_COMPONENT}",
            c.len()
        )));
    }
    let solved = exec.map(&comps, |members| {
        let adj = local_adjacency(members, &neighbors);
        let (best, optimal, nodes) = solve_component(&adj, budget);
        (best.into_iter().map(|i| members[i]).collect::<Vec<_>>(), optimal, nodes)
    });
    let mut witness = Vec::new();
    let mut optimal = true;
    let mut nodes_explored = 0;
    for (w, opt, nodes) in solved {
        witness.extend(w);
        optimal &= opt;
        nodes_explored += nodes;
    }
    let witness = VertexSet::new(witness);
    Ok(SolveResult {
        size: witness.len(),
        witness,
        optimal,
        nodes_explored,
        time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Neighbour masks over loop-free vertices; loop vertices get `None`.
fn masks(g: &MultiGraph) -> Result<Vec<Option<u64>>> {
    if g.vertex_count() > 64 {
        return Err(PlgError::Resource(format!(
            "brute force limited to 64 vertices, got {}",
            g.vertex_count()
        )));
    }
    let adj = g.adjacency();
    Ok((0..g.vertex_count())
        .map(|v| {
            (!adj.has_loop(v)).then(|| adj.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        })
        .collect())
}

fn enumerate_from(masks: &[Option<u64>], chosen: u64, blocked: u64, next: usize, out: &mut Vec<u64>) {
    out.push(chosen);
    for v in next..masks.len() {
        if let Some(m) = masks[v] {
            if blocked >> v & 1 == 0 {
                enumerate_from(masks, chosen | 1 << v, blocked | m, v + 1, out);
            }
        }
    }
}

/// Every independent set (the empty set first), grouped by smallest member.
/// At most 64 vertices.
pub fn independent_sets(g: &MultiGraph, exec: Exec) -> Result<Vec<VertexSet>> {
    let masks = masks(g)?;
    let groups = exec.map_range(0..masks.len(), |v| {
        let mut out = Vec::new();
        if let Some(m) = masks[v] {
            enumerate_from(&masks, 1 << v, m, v + 1, &mut out);
        }
        out
    });
    let to_set = |bits: u64| VertexSet::new((0..64).filter(|i| bits >> i & 1 == 1));
    let mut all = vec![VertexSet::default()];
    all.extend(groups.into_iter().flatten().map(to_set));
    Ok(all)
}

/// Independence number by exhaustive search. At most 64 vertices.
pub fn brute_force_mis(g: &MultiGraph) -> Result<usize> {
    fn best(masks: &[Option<u64>], size: usize, blocked: u64, next: usize) -> usize {
        let mut top = size;
        for v in next..masks.len() {
            if let Some(m) = masks[v] {
                if blocked >> v & 1 == 0 {
                    top = top.max(best(masks, size + 1, blocked | m, v + 1));
                }
            }
        }
        top
    }
    let masks = masks(g)?;
    Ok(best(&masks, 0, 0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn petersen() -> MultiGraph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        MultiGraph::from_edges(10, &e).unwrap()
    }

    #[test]
    fn solver_examples() {
        let r = exact_mis(&MultiGraph::cycle(5), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.size, 2);
        assert!(r.optimal);
        assert!(MultiGraph::cycle(5).is_independent(&r.witness).unwrap());

        let p = petersen();
        assert_eq!(brute_force_mis(&p).unwrap(), 4);
        assert_eq!(exact_mis(&p, DEFAULT_BUDGET).unwrap().size, 4);

        let r = exact_mis(&MultiGraph::new(7), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.size, 7);
    }

    #[test]
    fn loops_are_excluded() {
        let mut g = MultiGraph::new(3);
        g.add_edge(0, 0, 1).unwrap();
        g.add_edge(1, 2, 3).unwrap();
        assert_eq!(exact_mis(&g, DEFAULT_BUDGET).unwrap().size, 1);
        assert_eq!(brute_force_mis(&g).unwrap(), 1);
        assert_eq!(independent_sets(&g, Exec::Sequential).unwrap().len(), 3);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = petersen();
        let r = exact_mis(&g, 1).unwrap();
        assert!(!r.optimal);
        assert!(g.is_independent(&r.witness).unwrap());
    }

    #[test]
    fn enumeration_counts_path() {
        // P3: {}, {0}, {1}, {2}, {0,2}
        let g = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let sets = independent_sets(&g, Exec::Parallel).unwrap();
        assert_eq!(sets.len(), 5);
        assert_eq!(sets, independent_sets(&g, Exec::Sequential).unwrap());
    }

    fn arb_graph() -> impl Strategy<Value = MultiGraph> {
        (1usize..16).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..40).prop_map(move |edges| {
                let mut g = MultiGraph::new(n);
                for (u, v) in edges {
                    g.add_edge(u, v, 1).unwrap();
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn exact_matches_brute_force(g in arb_graph()) {
            let r = exact_mis(&g, DEFAULT_BUDGET).unwrap();
            prop_assert!(r.optimal);
            prop_assert_eq!(r.size, brute_force_mis(&g).unwrap());
            prop_assert!(g.is_independent(&r.witness).unwrap());
        }

        #[test]
        fn invariant_under_relabeling(g in arb_graph(), seed in 0u64..1000) {
            let n = g.vertex_count();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let mut h = MultiGraph::new(n);
            for (u, v, m) in g.edges() {
                h.add_edge(perm[u], perm[v], m).unwrap();
            }
            prop_assert_eq!(
                exact_mis(&g, DEFAULT_BUDGET).unwrap().size,
                exact_mis(&h, DEFAULT_BUDGET).unwrap().size
            );
        }
    }
}
