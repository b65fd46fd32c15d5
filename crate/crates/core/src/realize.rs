//! Realizing sorted degree sequences as multigraphs covered by few cliques.
//!
//! The sequence is consumed left to right. A clique starts at position `p`
//! and spans `d_p + 1` vertices (fewer at the tail), so the next clique
//! starts at `p + d_p + 1`. Each member's remaining degree is then filled
//! inside its clique with parallel edges and, when one member holds more
//! than half of the clique's residual, self-loops. An odd residual leaves
//! one pending half-edge, which is joined to the next clique's pending
//! half-edge; a half-edge left at the end is the parity deficit.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{PlgError, Result};
use crate::graph::MultiGraph;
use crate::model::PowerLawParams;

/// Non-decreasing sequence of positive degrees.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DegreeSeq {
    entries: Vec<u64>,
}

impl DegreeSeq {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(PlgError::input("degree sequence entries must be positive"));
        }
        if entries.windows(2).any(|w| w[0] > w[1]) {
            return Err(PlgError::input("degree sequence must be sorted non-decreasing"));
        }
        Ok(DegreeSeq { entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn sum(&self) -> u128 {
        self.entries.iter().map(|&d| d as u128).sum()
    }
}

/// Ordered cliques partitioning a vertex set; its length bounds the
/// independence number of the covered subgraph from above.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CliqueCoverCertificate {
    pub cliques: Vec<Vec<usize>>,
    /// Sequence position where each clique starts (zero-based).
    pub start_indices: Vec<usize>,
    /// Vertex whose degree ended one below its target, if any.
    pub parity_deficit: Option<usize>,
}

impl CliqueCoverCertificate {
    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    pub fn clique_sizes(&self) -> Vec<usize> {
        self.cliques.iter().map(Vec::len).collect()
    }

    /// Checks that every clique is a clique of `g` and that together they
    /// partition exactly `covered`.
    pub fn check(&self, g: &MultiGraph, covered: &[usize]) -> std::result::Result<(), String> {
        let mut seen: Vec<usize> = Vec::with_capacity(covered.len());
        for (i, c) in self.cliques.iter().enumerate() {
            if c.is_empty() {
                return Err(format!("clique {i} is empty"));
            }
            match g.is_clique(c) {
                Ok(true) => {}
                Ok(false) => return Err(format!("clique {i} is not a clique")),
                Err(e) => return Err(format!("clique {i}: {e}")),
            }
            seen.extend_from_slice(c);
        }
        seen.sort_unstable();
        let mut want = covered.to_vec();
        want.sort_unstable();
        if seen != want {
            return Err("cliques do not partition the covered vertex set".into());
        }
        Ok(())
    }

    pub(crate) fn from_ranges(ranges: &[Range<usize>], starts: Vec<usize>) -> Self {
        CliqueCoverCertificate {
            cliques: ranges.iter().map(|r| r.clone().collect()).collect(),
            start_indices: starts,
            parity_deficit: None,
        }
    }
}

/// Exactly `y_i` copies of each `i ∈ [a, b]`, ascending.
pub fn degree_sequence_of_interval(p: &PowerLawParams, a: u64, b: u64) -> Result<DegreeSeq> {
    if a < 1 || a > b || b > p.delta() {
        return Err(PlgError::input(format!(
            "interval [{a}, {b}] not within [1, {}]",
            p.delta()
        )));
    }
    let mut entries = Vec::with_capacity(p.count_sum(a, b) as usize);
    for (i, j, c) in p.runs(a, b) {
        for deg in i..=j {
            entries.extend(std::iter::repeat_n(deg, c as usize));
        }
    }
    Ok(DegreeSeq { entries })
}

/// Clique layout and fill produced by [`realize_into`].
pub(crate) struct Realized {
    pub vertices: Range<usize>,
    pub cliques: Vec<Range<usize>>,
    pub starts: Vec<usize>,
}

/// Appends a realization of `d` to `g`. `pending` carries an unmatched
/// half-edge in and out; a new odd residual is joined to it by one edge.
pub(crate) fn realize_into(
    g: &mut MultiGraph,
    d: &DegreeSeq,
    pending: &mut Option<usize>,
) -> Result<Realized> {
    let deg = d.entries();
    let m = deg.len();
    let vertices = g.add_vertices(m);
    let off = vertices.start;
    let mut cliques = Vec::new();
    let mut starts = Vec::new();
    let mut p = 0usize;
    while p < m {
        let s = (deg[p] as usize + 1).min(m - p);
        let range = off + p..off + p + s;
        g.add_clique_block(range.clone())?;
        let residual: Vec<u64> = deg[p..p + s].iter().map(|&dv| dv - (s as u64 - 1)).collect();
        if let Some(v) = fill_residual(g, range.start, &residual)? {
            match pending.take() {
                Some(u) => g.add_edge(u, v, 1)?,
                None => *pending = Some(v),
            }
        }
        starts.push(p);
        cliques.push(range);
        p += s;
    }
    Ok(Realized {
        vertices,
        cliques,
        starts,
    })
}

/// Pairs residual stubs inside one clique starting at vertex `base`.
/// Stubs are laid out in member order; stub `j` pairs with stub `j + R/2`.
/// Returns the owner of the odd stub out, if any.
fn fill_residual(g: &mut MultiGraph, base: usize, residual: &[u64]) -> Result<Option<usize>> {
    let total: u64 = residual.iter().sum();
    let odd = if total % 2 == 1 {
        residual.iter().rposition(|&r| r > 0).map(|i| base + i)
    } else {
        None
    };
    let half = total / 2;
    if half == 0 {
        return Ok(odd);
    }
    // cursor over stubs: (member index, stubs already consumed at member)
    let advance = |mut idx: usize, mut skip: u64| -> (usize, u64) {
        while skip >= residual[idx] {
            skip -= residual[idx];
            idx += 1;
        }
        (idx, skip)
    };
    let (mut ia, mut ua) = (advance(0, 0).0, 0u64);
    let (mut ib, mut ub) = advance(0, half);
    let mut left = half;
    while left > 0 {
        let take = (residual[ia] - ua).min(residual[ib] - ub).min(left);
        g.add_edge(base + ia, base + ib, take)?;
        left -= take;
        ua += take;
        ub += take;
        if left == 0 {
            break;
        }
        if ua == residual[ia] {
            (ia, ua) = advance(ia + 1, 0);
        }
        if ub == residual[ib] {
            (ib, ub) = advance(ib + 1, 0);
        }
    }
    Ok(odd)
}

/// Realizes `d` on fresh vertices `0..d.len()`.
pub fn realize(d: &DegreeSeq) -> Result<(MultiGraph, CliqueCoverCertificate)> {
    let mut g = MultiGraph::new(0);
    let mut pending = None;
    let r = realize_into(&mut g, d, &mut pending)?;
    let mut cert = CliqueCoverCertificate::from_ranges(&r.cliques, r.starts);
    cert.parity_deficit = pending;
    Ok((g, cert))
}

/// Closed-form and exact per-degree bounds on the number of cliques the
/// realizer needs for `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CliqueCoverBound {
    pub closed_form: f64,
    /// `Σ_{i=a}^{b} ⌈y_i / i⌉`.
    pub ceiling_sum: u64,
}

pub fn clique_cover_bound(p: &PowerLawParams, a: u64, b: u64) -> Result<CliqueCoverBound> {
    if a < 1 || a > b || b > p.delta() {
        return Err(PlgError::input(format!(
            "interval [{a}, {b}] not within [1, {}]",
            p.delta()
        )));
    }
    let e_a = p.exp_alpha();
    let beta = p.beta();
    let (af, bf) = (a as f64, (b + 1) as f64);
    let closed_form = e_a / beta * (af.powf(-beta) - bf.powf(-beta)) + e_a / af.powf(beta + 1.0)
        - e_a / bf.powf(beta + 1.0)
        + (b + 1 - a) as f64;
    Ok(CliqueCoverBound {
        closed_form,
        ceiling_sum: ceiling_sum(p, a, b),
    })
}

pub(crate) fn ceiling_sum(p: &PowerLawParams, a: u64, b: u64) -> u64 {
    let mut total = 0;
    for (i, j, c) in p.runs(a, b) {
        if c == 0 {
            continue;
        }
        // ⌈c/t⌉ = 1 once t ≥ c
        let slow_end = j.min(c.saturating_sub(1));
        for t in i..=slow_end {
            total += c.div_ceil(t);
        }
        let fast_start = i.max(slow_end + 1);
        if fast_start <= j {
            total += j - fast_start + 1;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> DegreeSeq {
        DegreeSeq::new(v.to_vec()).unwrap()
    }

    fn deficit_ok(g: &MultiGraph, d: &DegreeSeq, cert: &CliqueCoverCertificate) {
        let got = g.degrees();
        let mut off = 0;
        for (v, (&have, &want)) in got.iter().zip(d.entries()).enumerate() {
            if have != want {
                assert_eq!(have + 1, want, "vertex {v}");
                assert_eq!(cert.parity_deficit, Some(v));
                off += 1;
            }
        }
        assert!(off <= 1);
        assert_eq!(cert.parity_deficit.is_some(), d.sum() % 2 == 1);
    }

    #[test]
    fn interval_sequences() {
        let p = PowerLawParams::new(2.0, 1.0).unwrap();
        assert_eq!(
            degree_sequence_of_interval(&p, 1, 2).unwrap().entries(),
            &[1, 1, 1, 1, 1, 1, 1, 2, 2, 2]
        );
        let full = degree_sequence_of_interval(&p, 1, 7).unwrap();
        assert_eq!(full.len(), 16);
        assert_eq!(degree_sequence_of_interval(&p, 3, 3).unwrap().entries(), &[3, 3]);
        assert!(degree_sequence_of_interval(&p, 0, 3).is_err());
    }

    #[test]
    fn realize_examples() {
        let d = seq(&[1, 1, 1, 1]);
        let (g, c) = realize(&d).unwrap();
        assert_eq!(c.clique_sizes(), vec![2, 2]);
        assert_eq!(g.degrees(), vec![1, 1, 1, 1]);

        let (g, c) = realize(&seq(&[2, 2, 2])).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(g, MultiGraph::complete(3));

        let (g, c) = realize(&seq(&[1, 1, 2, 2, 2])).unwrap();
        assert_eq!(c.cliques, vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(c.start_indices, vec![0, 2]);
        assert_eq!(g.degrees(), vec![1, 1, 2, 2, 2]);
        assert_eq!(g.total_multiplicity(), 4);
    }

    #[test]
    fn residual_fill_and_parity() {
        // clique {0,1} then residuals (0, 4): two self-loops on vertex 1
        let d = seq(&[1, 5]);
        let (g, c) = realize(&d).unwrap();
        assert_eq!(g.multiplicity(1, 1), 2);
        deficit_ok(&g, &d, &c);

        let d = seq(&[1, 2, 2]);
        let (g, c) = realize(&d).unwrap();
        deficit_ok(&g, &d, &c);
        assert_eq!(c.parity_deficit, Some(1));

        // two odd cliques joined by a cross edge
        let d = seq(&[1, 2, 3, 3, 3, 4]);
        let (g, c) = realize(&d).unwrap();
        deficit_ok(&g, &d, &c);
        let sum: u64 = g.degrees().iter().sum();
        assert_eq!(sum, 2 * g.total_multiplicity());
    }

    #[test]
    fn p_recurrence_holds() {
        let p = PowerLawParams::new(3.0, 0.5).unwrap();
        let d = degree_sequence_of_interval(&p, 1, p.delta()).unwrap();
        let (g, c) = realize(&d).unwrap();
        for w in c.start_indices.windows(2) {
            assert_eq!(w[1], w[0] + d.entries()[w[0]] as usize + 1);
        }
        assert_eq!(c.start_indices[0], 0);
        deficit_ok(&g, &d, &c);
        let all: Vec<usize> = (0..d.len()).collect();
        c.check(&g, &all).unwrap();
    }

    #[test]
    fn ceiling_sums() {
        let p = PowerLawParams::new(2.0, 1.0).unwrap();
        assert_eq!(clique_cover_bound(&p, 1, 1).unwrap().ceiling_sum, 7);
        assert_eq!(clique_cover_bound(&p, 7, 7).unwrap().ceiling_sum, 1);

        let p = PowerLawParams::new(3.0, 0.5).unwrap();
        let direct: u64 = (2..=10).map(|i| p.count(i).div_ceil(i)).sum();
        let b = clique_cover_bound(&p, 2, 10).unwrap();
        assert_eq!(b.ceiling_sum, direct);
        let (_, c) = realize(&degree_sequence_of_interval(&p, 2, 10).unwrap()).unwrap();
        assert!(c.len() as u64 <= b.ceiling_sum);
        assert!(b.ceiling_sum as f64 <= b.closed_form + 2.0);

        for &(a, beta) in &[(4.0, 0.3), (5.0, 1.0)] {
            let p = PowerLawParams::new(a, beta).unwrap();
            let direct: u64 = (1..=p.delta()).map(|i| p.count(i).div_ceil(i)).sum();
            assert_eq!(ceiling_sum(&p, 1, p.delta()), direct);
        }
    }

    #[test]
    fn certificate_check_catches_bad_cover() {
        let (g, mut c) = realize(&seq(&[1, 1, 2, 2, 2])).unwrap();
        assert!(c.check(&g, &[0, 1, 2, 3, 4]).is_ok());
        assert!(c.check(&g, &[0, 1, 2, 3]).is_err());
        c.cliques = vec![vec![0, 2], vec![1, 3, 4]];
        assert!(c.check(&g, &[0, 1, 2, 3, 4]).is_err());
    }

    #[test]
    fn rejects_unsorted() {
        assert!(DegreeSeq::new(vec![2, 1]).is_err());
        assert!(DegreeSeq::new(vec![0, 1]).is_err());
    }
}
