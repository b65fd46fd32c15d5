use proptest::prelude::*;

use plg_core::beta1::{embed_beta1, random_regular_expander, walk_product, DEFAULT_WALK_CAP};
use plg_core::io::{read_graph, write_graph};
use plg_core::mis::{brute_force_mis, exact_mis, DEFAULT_BUDGET};
use plg_core::realize::realize;
use plg_core::sublinear::embed_sub1;
use plg_core::verify::verify_embedding;
use plg_core::{DegreeSeq, Exec, MultiGraph, VertexSet};

fn simple_graph(max_n: usize) -> impl Strategy<Value = MultiGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::sample::subsequence(pairs, 0..=len.min(12))
            .prop_map(move |edges| MultiGraph::from_edges(n, &edges).unwrap())
    })
}

fn degree_seq() -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(1u64..=7, 1..=18).prop_map(|mut d| {
        d.sort_unstable();
        d
    })
}

/// Independence of a vertex set by direct pair scan.
fn independent(g: &MultiGraph, s: &[usize]) -> bool {
    s.iter()
        .all(|&a| !g.has_self_loop(a) && s.iter().all(|&b| a == b || !g.has_edge(a, b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn realized_degrees_hit_targets(d in degree_seq()) {
        let seq = DegreeSeq::new(d.clone()).unwrap();
        let (g, c) = realize(&seq).unwrap();
        let got = g.degrees();
        for (v, (&want, &have)) in d.iter().zip(&got).enumerate() {
            let short = u64::from(c.parity_deficit == Some(v));
            prop_assert_eq!(have + short, want);
        }
        prop_assert_eq!(c.parity_deficit.is_some(), d.iter().sum::<u64>() % 2 == 1);
        let all: Vec<usize> = (0..d.len()).collect();
        prop_assert!(c.check(&g, &all).is_ok());
        prop_assert!(brute_force_mis(&g).unwrap() <= c.len());
    }

    #[test]
    fn exact_solver_agrees_with_brute_force(g in simple_graph(10)) {
        let s = exact_mis(&g, DEFAULT_BUDGET).unwrap();
        prop_assert!(s.optimal);
        prop_assert_eq!(s.size, brute_force_mis(&g).unwrap());
        prop_assert!(independent(&g, s.witness.as_slice()));
    }

    #[test]
    fn walk_product_edge_rule(g in simple_graph(6), seed in 0u64..4) {
        let n = g.vertex_count();
        prop_assume!(n >= 4);
        let h = random_regular_expander(n, n - 1, seed).unwrap();
        let wp = walk_product(&g, &h, 2, DEFAULT_WALK_CAP, Exec::default()).unwrap();
        prop_assert_eq!(wp.walks.len(), n * (n - 1));
        for (i, u) in wp.walks.iter().enumerate() {
            prop_assert_eq!(wp.product.has_self_loop(i), !independent(&g, u));
            for (j, v) in wp.walks.iter().enumerate().skip(i + 1) {
                let union: Vec<usize> = u.iter().chain(v).copied().collect();
                prop_assert_eq!(wp.product.has_edge(i, j), !independent(&g, &union));
            }
        }
    }

    #[test]
    fn sub1_embedding_verifies(g in simple_graph(6), b in 0usize..3) {
        let beta = [0.3, 0.5, 0.8][b];
        let (out, r) = embed_sub1(&g, beta).unwrap();
        let v = verify_embedding(&out, &r, &g);
        prop_assert!(v.pass, "{:?}", v.first_failure());
        let base = exact_mis(&g, DEFAULT_BUDGET).unwrap();
        let mapped = VertexSet::new(base.witness.iter().map(|i| 2 * i));
        prop_assert!(out.is_independent(&mapped).unwrap());
    }

    #[test]
    fn graph_files_round_trip(g in simple_graph(9), loops in proptest::collection::vec((0usize..9, 1u64..3), 0..3)) {
        let mut g = g;
        for (v, m) in loops {
            if v < g.vertex_count() {
                g.add_edge(v, v, m).unwrap();
            }
        }
        g.set_label(0, "x").unwrap();
        let text = write_graph(&g);
        let back = read_graph(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_graph(&back), text);
    }
}

#[test]
fn beta1_embedding_verifies_on_small_graphs() {
    let graphs = [
        MultiGraph::cycle(6),
        MultiGraph::from_edges(6, &[(0, 1), (2, 3)]).unwrap(),
        MultiGraph::new(4),
    ];
    for g in &graphs {
        let (out, r) = embed_beta1(g, 3, 1, Some(2)).unwrap();
        let v = verify_embedding(&out, &r, g);
        assert!(v.pass, "{:?}", v.first_failure());
        assert!(out.is_independent(&r.witness).unwrap());
        assert_eq!(r.witness.len() as f64, r.bounds["witness_walk_count"]);
    }
}
