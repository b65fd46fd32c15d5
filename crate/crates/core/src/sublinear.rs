//! Embedding an arbitrary simple graph into an (α,β) power-law graph, β<1.
//!
//! The input is doubled (each vertex becomes an adjacent pair, cross edges
//! copy the original adjacency), so every vertex of the double has odd
//! degree and a private matching edge. The pairs take the lowest degree
//! slots of `[xΔ, Δ]` and are raised to their targets by parallel copies of
//! the matching edge. Everything else is realized as two residual parts:
//! `G1` on degrees `[1, e^{α/(β+1)})` and `G2` on `[e^{α/(β+1)}, xΔ − 1]`
//! plus the unused slots of `[xΔ, Δ]`.

use std::collections::BTreeMap;

use crate::embed::{
    check_conformance, realize_part, slot_degrees, FillVertex, LABEL_EMBEDDED, LABEL_G1,
    LABEL_G2,
};
use crate::error::{PlgError, Result};
use crate::graph::{MultiGraph, VertexSet};
use crate::json::SCHEMA;
use crate::mis::{exact_mis, DEFAULT_BUDGET};
use crate::model::{ceil_snap, PowerLawParams};
use crate::realize::{ceiling_sum, clique_cover_bound};
use crate::report::{EmbeddingKind, EmbeddingReport, PartRange, Sub1Details};

const MAX_BUMPS: u32 = 64;

/// Each vertex `i` becomes `2i` and `2i + 1`, joined by one edge; every edge
/// `{i, j}` becomes the four edges between the two pairs.
pub fn double_graph(g: &MultiGraph) -> Result<MultiGraph> {
    if !g.is_simple() {
        return Err(PlgError::input(
            "doubling needs a simple graph (no loops, multiplicities 1)",
        ));
    }
    let n = g.vertex_count();
    let mut out = MultiGraph::new(2 * n);
    for i in 0..n {
        out.add_edge(2 * i, 2 * i + 1, 1)?;
    }
    for (u, v, _) in g.edges() {
        for a in [2 * u, 2 * u + 1] {
            for b in [2 * v, 2 * v + 1] {
                out.add_edge(a, b, 1)?;
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sub1Params {
    pub n: usize,
    pub beta: f64,
    pub x: f64,
    pub alpha: f64,
    pub delta: u64,
    pub y_split: f64,
    pub g3_cut: u64,
    pub bumps: u32,
}

impl Sub1Params {
    pub fn plg(&self) -> PowerLawParams {
        PowerLawParams::new(self.alpha, self.beta).expect("validated on construction")
    }

    /// `⌈xΔ⌉`: lowest degree available to the embedded pairs.
    pub fn slot_low(&self) -> u64 {
        ceil_snap(self.x * self.delta as f64)
    }

    /// `⌈√Δ⌉`.
    pub fn split_index(&self) -> u64 {
        ceil_snap((self.delta as f64).sqrt())
    }

    /// `(1−β)x + x^{1−β} − 1 ≤ 0`.
    pub fn x_constraint_holds(&self) -> bool {
        (1.0 - self.beta) * self.x + self.x.powf(1.0 - self.beta) - 1.0 <= 1e-12
    }

    fn with_alpha(n: usize, beta: f64, x: f64, alpha: f64, bumps: u32) -> Result<Self> {
        let p = PowerLawParams::new(alpha, beta)?;
        let delta = p.delta();
        Ok(Sub1Params {
            n,
            beta,
            x,
            alpha,
            delta,
            y_split: (delta as f64).powf(-0.5),
            g3_cut: ceil_snap((alpha / (beta + 1.0)).exp()),
            bumps,
        })
    }

    fn bumped(&self) -> Result<Self> {
        if self.bumps >= MAX_BUMPS {
            return Err(PlgError::Internal(format!(
                "no feasible alpha after {MAX_BUMPS} increments"
            )));
        }
        let step = self.beta * (1.0 + 1.0 / self.n as f64).ln();
        Sub1Params::with_alpha(self.n, self.beta, self.x, self.alpha + step, self.bumps + 1)
    }

    /// `n ≤ xΔ` and `n ≤ |[⌈xΔ⌉, Δ]|`.
    pub fn conditions_hold(&self) -> bool {
        let p = self.plg();
        let fits_real = self.n as f64 <= self.x * self.delta as f64 * (1.0 + 1e-12);
        let low = self.slot_low().max(1);
        fits_real && low <= self.delta && p.count_sum(low, self.delta) >= self.n as u64
    }
}

/// `x = (1/2)^{1/(1−β)}`, `α = β·ln(n/x)`, raised by `β·ln(1 + 1/n)` until
/// both slot conditions hold.
pub fn choose_params_sub1(n: usize, beta: f64) -> Result<Sub1Params> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(PlgError::input(format!("n must be even and at least 2, got {n}")));
    }
    if !(beta > 0.0 && beta < 1.0) {
        return Err(PlgError::input(format!("beta must lie in (0, 1), got {beta}")));
    }
    let x = 0.5f64.powf(1.0 / (1.0 - beta));
    let alpha = beta * (n as f64 / x).ln();
    let mut p = Sub1Params::with_alpha(n, beta, x, alpha, 0)?;
    while !p.conditions_hold() {
        p = p.bumped()?;
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sub1Bounds {
    /// Closed-form estimate for degrees below `yΔ`.
    pub g1_low: f64,
    /// Closed-form estimate for degrees in `[yΔ, xΔ]`.
    pub g1_high: f64,
    pub g1_bound: f64,
    pub g3_bound: f64,
}

pub fn residual_is_bound_sub1(p: &Sub1Params) -> Sub1Bounds {
    let (alpha, beta, x, y) = (p.alpha, p.beta, p.x, p.y_split);
    let e_a = alpha.exp();
    let d = p.delta as f64;
    let yd = y * d;
    let xd = x * d;
    let g1_low = e_a / beta * (1.0 - (yd + 1.0).powf(-beta))
        + e_a * (1.0 - (yd + 1.0).powf(-beta - 1.0))
        + yd;
    let g1_high = (alpha * (1.0 - 1.0 / beta)).exp() / y
        * (xd.powf(1.0 - beta) / (1.0 - beta) - yd.powf(1.0 - beta) / (1.0 - beta)
            + yd.powf(-beta)
            - xd.powf(-beta))
        + 1.0;
    Sub1Bounds {
        g1_low,
        g1_high,
        g1_bound: g1_low + g1_high,
        g3_bound: (alpha / (beta + 1.0)).exp() / (1.0 - beta),
    }
}

/// Closed-form values a report must carry for `p`, recomputable by a verifier.
pub(crate) fn closed_form_bounds(p: &Sub1Params) -> BTreeMap<String, f64> {
    let b = residual_is_bound_sub1(p);
    let mut m = BTreeMap::new();
    m.insert("g1_bound".into(), b.g1_bound);
    m.insert("g1_bound_low".into(), b.g1_low);
    m.insert("g1_bound_high".into(), b.g1_high);
    m.insert("g3_bound".into(), b.g3_bound);
    m.insert("g1_bound_over_sqrt_delta".into(), b.g1_bound / (p.delta as f64).sqrt());
    m
}

/// Degree layout of the residual parts, before absorbers are assigned.
struct Layout {
    pair_targets: Vec<(u64, u64)>,
    leftover: Vec<u64>,
    g1: Vec<u64>,
    g2_full: Vec<u64>,
}

fn layout(p: &Sub1Params) -> Layout {
    let plg = p.plg();
    let low = p.slot_low();
    let slots = slot_degrees(&plg, low, p.delta);
    let pair_targets = slots[..p.n].chunks(2).map(|c| (c[0], c[1])).collect();
    let leftover = slots[p.n..].to_vec();
    let cut = p.g3_cut.min(low);
    Layout {
        pair_targets,
        leftover,
        g1: slot_degrees(&plg, 1, cut - 1),
        g2_full: slot_degrees(&plg, cut, low - 1),
    }
}

/// Routes each straddling pair's surplus half-edge; `None` when there are
/// not enough fill vertices to absorb them.
fn route(
    lay: &Layout,
    straddlers: &[usize],
) -> Option<(Vec<FillVertex>, Vec<FillVertex>)> {
    let mut g1: Vec<FillVertex> = lay.g1.iter().map(|&t| FillVertex::plain(t)).collect();
    let mut g2: Vec<FillVertex> = lay
        .g2_full
        .iter()
        .chain(&lay.leftover)
        .map(|&t| FillVertex::plain(t))
        .collect();
    let n_full = lay.g2_full.len();
    // leftover slots highest first, then the full part highest first, then G1
    let g1_ok: Vec<usize> = (0..g1.len()).rev().filter(|&i| g1[i].target >= 2).collect();
    let mut candidates = (n_full..g2.len())
        .rev()
        .map(|i| (true, i))
        .chain((0..n_full).rev().map(|i| (true, i)))
        .chain(g1_ok.into_iter().map(|i| (false, i)));
    for &w in straddlers {
        let (in_g2, i) = candidates.next()?;
        let f = if in_g2 { &mut g2[i] } else { &mut g1[i] };
        f.absorb.push(w);
    }
    Some((g1, g2))
}

/// Embeds `g` into an (α,β)-PLG with `0 < β < 1`.
pub fn embed_sub1(g: &MultiGraph, beta: f64) -> Result<(MultiGraph, EmbeddingReport)> {
    if g.vertex_count() == 0 {
        return Err(PlgError::input("input graph has no vertices"));
    }
    let doubled = double_graph(g)?;
    let n = doubled.vertex_count();
    let mut params = choose_params_sub1(n, beta)?;
    let pair_deg: Vec<u64> = (0..g.vertex_count()).map(|i| doubled.degree(2 * i)).collect();
    let (lay, straddlers, fill) = loop {
        let lay = layout(&params);
        let straddlers: Vec<usize> = lay
            .pair_targets
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a != b)
            .map(|(i, _)| 2 * i + 1)
            .collect();
        match route(&lay, &straddlers) {
            Some(fill) => break (lay, straddlers, fill),
            None => params = params.bumped()?,
        }
    };
    let plg = params.plg();

    let mut out = doubled;
    for v in 0..n {
        out.set_label(v, LABEL_EMBEDDED)?;
    }
    for (i, &(t1, _)) in lay.pair_targets.iter().enumerate() {
        let extra = t1 - pair_deg[i];
        if extra > 0 {
            out.add_edge(2 * i, 2 * i + 1, extra)?;
        }
    }
    let mut pending = None;
    let (g1_fill, g2_fill) = fill;
    let g1 = realize_part(&mut out, g1_fill, &mut pending, LABEL_G1)?;
    let g2 = realize_part(&mut out, g2_fill, &mut pending, LABEL_G2)?;
    let deficits: Vec<usize> = pending.into_iter().collect();
    let conformance = check_conformance(&out, &plg, &deficits, 1);

    let routed: Vec<(usize, usize)> = straddlers
        .iter()
        .map(|&w| {
            let absorber = g1
                .part
                .ids()
                .chain(g2.part.ids())
                .find(|&v| out.multiplicity(v, w) > 0)
                .expect("every straddler was routed");
            (w, absorber)
        })
        .collect();

    let base = exact_mis(g, DEFAULT_BUDGET)?;
    let witness = VertexSet::new(base.witness.iter().map(|i| 2 * i));

    let split = params.split_index();
    let below = g1
        .cert
        .start_indices
        .iter()
        .filter(|&&s| g1.seq.entries()[s] < split)
        .count();
    let low = params.slot_low();
    let cut = params.g3_cut.min(low);
    let mut bounds = closed_form_bounds(&params);
    bounds.insert("witness_size".into(), witness.len() as f64);
    bounds.insert("G1_certificate".into(), g1.cert.len() as f64);
    bounds.insert("G1_cliques_below_split".into(), below as f64);
    bounds.insert("G1_cliques_from_split".into(), (g1.cert.len() - below) as f64);
    bounds.insert("G2_certificate".into(), g2.cert.len() as f64);
    if cut > 1 {
        bounds.insert("G1_ceiling_sum".into(), ceiling_sum(&plg, 1, cut - 1) as f64);
        bounds.insert("G1_closed_form".into(), clique_cover_bound(&plg, 1, cut - 1)?.closed_form);
    }
    if params.g3_cut <= params.delta {
        let tail = plg.count_sum(params.g3_cut, params.delta);
        bounds.insert("G3_ceiling".into(), tail.div_ceil(params.g3_cut) as f64);
    }

    let mut parts = BTreeMap::new();
    parts.insert(LABEL_EMBEDDED.to_string(), PartRange { start: 0, len: n });
    parts.insert("G1".to_string(), g1.part);
    parts.insert("G2".to_string(), g2.part);
    let mut certificates = BTreeMap::new();
    certificates.insert("G1".to_string(), g1.cert);
    certificates.insert("G2".to_string(), g2.cert);

    let mut notes = vec![
        "g1_bound_low is the closed-form estimate for degrees below the split; the intermediate per-degree sum is not evaluated".to_string(),
    ];
    if params.g3_cut > low {
        notes.push(format!(
            "G1/G2 cut {} exceeds the lowest embedded degree {low}; G1 is clamped to [1, {}] and G2 has no full part",
            params.g3_cut,
            low - 1
        ));
    }

    let report = EmbeddingReport {
        schema: SCHEMA.to_string(),
        kind: EmbeddingKind::Sub1,
        log_base: "e".to_string(),
        alpha: params.alpha,
        beta,
        delta: params.delta,
        x: params.x,
        bumps: params.bumps,
        sub1: Some(Sub1Details {
            n_original: g.vertex_count(),
            n_doubled: n,
            y_split: params.y_split,
            split_index: split,
            g3_cut: params.g3_cut,
            slack_real: params.x * params.delta as f64 - n as f64,
            slack_slots: plg.count_sum(low, params.delta) - n as u64,
            routed,
        }),
        beta1: None,
        parts,
        certificates,
        bounds,
        conformance,
        witness,
        embedding: (0..g.vertex_count()).map(|i| vec![2 * i, 2 * i + 1]).collect(),
        notes,
    };
    Ok((out, report))
}

/// Parameters as recorded in a report, for recomputation.
pub(crate) fn params_from_report(r: &EmbeddingReport) -> Result<Sub1Params> {
    let d = r
        .sub1
        .as_ref()
        .ok_or_else(|| PlgError::input("report has no sub1 section"))?;
    Sub1Params::with_alpha(d.n_doubled, r.beta, r.x, r.alpha, r.bumps)
}
