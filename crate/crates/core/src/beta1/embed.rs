//! Embedding of a walk product into an (α,1) power-law graph.

use std::collections::BTreeMap;

use crate::beta1::expander::{random_regular_expander, ExpanderCertificate};
use crate::beta1::params::{
    alon_interval, choose_k, choose_params_beta1, gap_record, layered_is_bound, low_interval_bound,
    Beta1Params, GapRatio,
};
use crate::beta1::walk::{good_walk_product, walk_count, DEFAULT_WALK_CAP};
use crate::embed::{
    check_conformance, realize_part, slot_degrees, FillVertex, LABEL_EMBEDDED, LABEL_G1, LABEL_G2,
};
use crate::error::{PlgError, Result};
use crate::graph::{MultiGraph, VertexSet};
use crate::json::SCHEMA;
use crate::mis::{exact_mis, DEFAULT_BUDGET};
use crate::par::Exec;
use crate::realize::ceiling_sum;
use crate::report::{Beta1Details, EmbeddingKind, EmbeddingReport, PartRange};

/// Gap amplification defaults: the two thresholds and the hardness exponent.
pub const GAP_A: f64 = 0.2;
pub const GAP_B: f64 = 0.6;
pub const GAP_EPSILON: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beta1Options {
    pub d: usize,
    pub seed: u64,
    /// Walk length; `None` takes the `k` chosen from the window.
    pub k: Option<usize>,
    pub walk_cap: usize,
    pub exec: Exec,
}

impl Beta1Options {
    pub fn new(d: usize, seed: u64) -> Self {
        Beta1Options {
            d,
            seed,
            k: None,
            walk_cap: DEFAULT_WALK_CAP,
            exec: Exec::default(),
        }
    }
}

/// The count used to pick α: embedded walks, at least 3.
pub(crate) fn alpha_count(n_embedded: usize) -> u64 {
    (n_embedded as u64).max(3)
}

/// Degree slots of `[⌈xΔ⌉, Δ]` given to product vertices (smallest slot at
/// least the vertex degree, largest degrees first), plus the unused slots.
/// `None` if some vertex finds no slot.
fn assign_slots(p: &Beta1Params, degrees: &[u64]) -> Option<(Vec<u64>, Vec<u64>)> {
    let mut free: BTreeMap<u64, u64> = BTreeMap::new();
    for (i, j, c) in p.plg().runs(p.slot_low(), p.delta) {
        for deg in i..=j {
            free.insert(deg, c);
        }
    }
    let mut order: Vec<usize> = (0..degrees.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degrees[v]), v));
    let mut target = vec![0; degrees.len()];
    for v in order {
        let (&slot, _) = free.range(degrees[v].max(1)..).next()?;
        target[v] = slot;
        let c = free.get_mut(&slot).expect("slot present");
        *c -= 1;
        if *c == 0 {
            free.remove(&slot);
        }
    }
    let leftover = free
        .into_iter()
        .flat_map(|(deg, c)| std::iter::repeat_n(deg, c as usize))
        .collect();
    Some((target, leftover))
}

struct Plan {
    targets: Vec<u64>,
    /// Extra multiplicity on product edges.
    doubled: Vec<(usize, usize, u64)>,
    g1: Vec<FillVertex>,
    g2: Vec<FillVertex>,
}

/// Raises each product vertex to its slot: first by thickening product
/// edges, then by edges to fill vertices (each keeps realized degree ≥ 1).
fn plan(p: &Beta1Params, d_graph: &MultiGraph) -> Option<Plan> {
    let degrees = d_graph.degrees();
    let (targets, leftover) = assign_slots(p, &degrees)?;
    let mut residual: Vec<u64> = targets.iter().zip(&degrees).map(|(t, d)| t - d).collect();
    let mut doubled = Vec::new();
    for (u, v, _) in d_graph.edges() {
        let m = residual[u].min(residual[v]);
        if m > 0 {
            residual[u] -= m;
            residual[v] -= m;
            doubled.push((u, v, m));
        }
    }
    let mut g1: Vec<FillVertex> = leftover.iter().rev().map(|&t| FillVertex::plain(t)).collect();
    let mut g2: Vec<FillVertex> = slot_degrees(&p.plg(), 1, p.slot_low() - 1)
        .into_iter()
        .rev()
        .map(FillVertex::plain)
        .collect();
    let mut pool = g1.iter_mut().chain(g2.iter_mut());
    let mut current = pool.next();
    for (v, r) in residual.iter().enumerate() {
        for _ in 0..*r {
            loop {
                let f = current.as_mut()?;
                if (f.absorb.len() as u64) + 1 < f.target {
                    f.absorb.push(v);
                    break;
                }
                current = pool.next();
            }
        }
    }
    Some(Plan {
        targets,
        doubled,
        g1,
        g2,
    })
}

/// Walks inside `s` that have `k` vertices, counted along `h`.
pub(crate) fn walks_within(h: &MultiGraph, s: &VertexSet, k: usize) -> u128 {
    if k == 0 {
        return 0;
    }
    let adj = h.adjacency();
    let mut count: Vec<u128> = (0..h.vertex_count())
        .map(|v| u128::from(s.contains(v)))
        .collect();
    for _ in 1..k {
        count = (0..h.vertex_count())
            .map(|v| {
                if s.contains(v) {
                    adj.neighbors(v).iter().map(|&w| count[w]).sum()
                } else {
                    0
                }
            })
            .collect();
    }
    count.iter().sum()
}

pub(crate) fn gap_for(lambda: f64, k: usize, n: usize, d: usize) -> Result<(GapRatio, bool)> {
    let fallback = GAP_B - lambda <= 0.0;
    let eps2 = if fallback { 0.0 } else { lambda };
    Ok((gap_record(GAP_A, GAP_B, eps2, k, n, d, GAP_EPSILON)?, fallback))
}

pub(crate) fn closed_form_bounds(p: &Beta1Params) -> BTreeMap<String, f64> {
    let lb = layered_is_bound(p);
    let (low_exact, low_closed) = low_interval_bound(p);
    let mut m = BTreeMap::new();
    m.insert("layered_bound".into(), lb.exact as f64);
    m.insert("layered_asymptotic".into(), lb.asymptotic);
    m.insert("naive_bound".into(), lb.naive as f64);
    m.insert("low_interval_ceiling".into(), low_exact as f64);
    m.insert("low_interval_closed_form".into(), low_closed);
    m
}

pub fn embed_beta1(
    g: &MultiGraph,
    d: usize,
    seed: u64,
    k_override: Option<usize>,
) -> Result<(MultiGraph, EmbeddingReport)> {
    let mut o = Beta1Options::new(d, seed);
    o.k = k_override;
    embed_beta1_with(g, &o)
}

pub fn embed_beta1_with(g: &MultiGraph, o: &Beta1Options) -> Result<(MultiGraph, EmbeddingReport)> {
    if !g.is_simple() {
        return Err(PlgError::input("embedding needs a simple input graph"));
    }
    let n = g.vertex_count();
    let h = random_regular_expander(n, o.d, o.seed)?;
    let window = choose_k(n as f64, o.d as f64)?;
    let k = o.k.unwrap_or(window.k);
    let (walks, d_graph) = good_walk_product(g, &h, k, o.walk_cap, o.exec)?;
    let n_emb = walks.len();

    let mut params = choose_params_beta1(alpha_count(n_emb))?;
    let plan = loop {
        match plan(&params, &d_graph) {
            Some(p) => break p,
            None => params = params.bumped()?,
        }
    };
    let plg = params.plg();

    let mut out = MultiGraph::new(0);
    out.append(&d_graph);
    for v in 0..n_emb {
        out.set_label(v, LABEL_EMBEDDED)?;
    }
    for &(u, v, m) in &plan.doubled {
        out.add_edge(u, v, m)?;
    }
    let mut pending = None;
    let g1 = realize_part(&mut out, plan.g1, &mut pending, LABEL_G1)?;
    let g2 = realize_part(&mut out, plan.g2, &mut pending, LABEL_G2)?;
    let deficits: Vec<usize> = pending.into_iter().collect();
    let conformance = check_conformance(&out, &plg, &deficits, 2);
    debug_assert!((0..n_emb).all(|v| out.degree(v) == plan.targets[v]));

    let base = exact_mis(g, DEFAULT_BUDGET)?;
    let s = &base.witness;
    let witness = VertexSet::new((0..n_emb).filter(|&i| walks[i].iter().all(|&v| s.contains(v))));
    let dp = walks_within(&h.graph, s, k);

    let alon = alon_interval(base.size, n, o.d, h.lambda_1, h.lambda_min, k)?;
    let (gap, gap_fallback) = gap_for(h.lambda, k, n, o.d)?;
    let layered = layered_is_bound(&params);

    let mut bounds = closed_form_bounds(&params);
    bounds.insert("alon_lo".into(), alon.0);
    bounds.insert("alon_hi".into(), alon.1);
    bounds.insert("base_independence".into(), base.size as f64);
    bounds.insert("witness_size".into(), witness.len() as f64);
    bounds.insert("witness_walk_count".into(), dp as f64);
    bounds.insert("G1_certificate".into(), g1.cert.len() as f64);
    bounds.insert("G2_certificate".into(), g2.cert.len() as f64);
    let low = params.slot_low();
    if low > 1 {
        bounds.insert("G2_ceiling_sum".into(), ceiling_sum(&plg, 1, low - 1) as f64);
    }

    let mut notes = vec![
        "all logarithms are natural, including those in the k window".to_string(),
        "walks whose own vertex set is not independent are left out of the embedding; they carry a self-loop in the full product and never enter an independent set".to_string(),
    ];
    if window.warning {
        notes.push(format!("k window [{}, {}] holds no integer", window.k_l, window.k_u));
    }
    if o.k.is_some_and(|k| k != window.k) {
        notes.push(format!("k={k} set explicitly; the window suggests {}", window.k));
    }
    if gap_fallback {
        notes.push(format!(
            "lambda {} leaves no room below b={GAP_B}; gap ratio evaluated with eps2=0",
            h.lambda
        ));
    }
    if !h.passes {
        notes.push(format!("expander lambda {} is above the tolerance", h.lambda));
    }
    if n_emb < 3 {
        notes.push(format!("{n_emb} walks embedded; alpha chosen as for 3"));
    }

    let mut parts = BTreeMap::new();
    parts.insert(LABEL_EMBEDDED.to_string(), PartRange { start: 0, len: n_emb });
    parts.insert("G1".to_string(), g1.part);
    parts.insert("G2".to_string(), g2.part);
    let mut certificates = BTreeMap::new();
    certificates.insert("G1".to_string(), g1.cert);
    certificates.insert("G2".to_string(), g2.cert);

    let ExpanderCertificate {
        lambda,
        lambda_1,
        lambda_min,
        passes,
        ..
    } = h;
    let report = EmbeddingReport {
        schema: SCHEMA.to_string(),
        kind: EmbeddingKind::Beta1,
        log_base: "e".to_string(),
        alpha: params.alpha,
        beta: 1.0,
        delta: params.delta,
        x: params.x,
        bumps: params.bumps,
        sub1: None,
        beta1: Some(Beta1Details {
            n_original: n,
            d: o.d,
            k,
            seed: o.seed,
            lambda,
            lambda_1,
            lambda_min,
            expander_passes: passes,
            k_window: window,
            n_d: walk_count(n, o.d, k).map_or(u64::MAX, |c| c as u64),
            n_embedded: n_emb,
            product_max_degree: d_graph.max_degree(),
            h: params.h,
            l: params.l,
            alon_interval: alon,
            layered_bound: layered,
            gap_ratio: gap,
        }),
        parts,
        certificates,
        bounds,
        conformance,
        witness,
        embedding: walks,
        notes,
    };
    Ok((out, report))
}

/// Parameters as recorded in a report, for recomputation.
pub(crate) fn params_from_report(r: &EmbeddingReport) -> Result<Beta1Params> {
    let d = r
        .beta1
        .as_ref()
        .ok_or_else(|| PlgError::input("report has no beta1 section"))?;
    Beta1Params::for_alpha(alpha_count(d.n_embedded), r.alpha, r.bumps)
}
