//! Pieces shared by both embedders: degree-slot layout, residual parts and
//! the degree-conformance check.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::graph::MultiGraph;
use crate::model::PowerLawParams;
use crate::realize::{realize_into, CliqueCoverCertificate, DegreeSeq};
use crate::report::{BucketMismatch, Conformance, PartRange};

pub const LABEL_EMBEDDED: &str = "embedded";
pub const LABEL_G1: &str = "residual-G1";
pub const LABEL_G2: &str = "residual-G2";

/// Compares the degree histogram of `g` with `y_1..y_Δ`. Each vertex in
/// `deficits` is counted one degree higher than it is.
pub fn check_conformance(
    g: &MultiGraph,
    p: &PowerLawParams,
    deficits: &[usize],
    max_deficits: usize,
) -> Conformance {
    let mut deg = g.degrees();
    let mut deficit_vertices: Vec<usize> = deficits.to_vec();
    deficit_vertices.sort_unstable();
    deficit_vertices.dedup();
    for &v in &deficit_vertices {
        if let Some(d) = deg.get_mut(v) {
            *d += 1;
        }
    }
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for d in deg {
        *hist.entry(d).or_insert(0) += 1;
    }
    let mut mismatches = Vec::new();
    for (i, j, c) in p.runs(1, p.delta()) {
        for degree in i..=j {
            let found = hist.remove(&degree).unwrap_or(0);
            if found != c {
                mismatches.push(BucketMismatch {
                    degree,
                    expected: c,
                    found,
                });
            }
        }
    }
    for (degree, found) in hist {
        mismatches.push(BucketMismatch {
            degree,
            expected: 0,
            found,
        });
    }
    mismatches.sort_by_key(|m| m.degree);
    let in_range = deficit_vertices.iter().all(|&v| v < g.vertex_count());
    Conformance {
        pass: mismatches.is_empty() && deficit_vertices.len() <= max_deficits && in_range,
        deficit_vertices,
        max_deficits,
        mismatches,
    }
}

/// Degrees `a..=b`, each repeated `y_i` times, ascending.
pub(crate) fn slot_degrees(p: &PowerLawParams, a: u64, b: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if a > b {
        return out;
    }
    for (i, j, c) in p.runs(a, b) {
        for deg in i..=j {
            out.extend(std::iter::repeat_n(deg, c as usize));
        }
    }
    out
}

/// A residual vertex to be realized. It is realized `absorb.len()` below
/// `target` and then joined once to each vertex in `absorb`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FillVertex {
    pub target: u64,
    pub absorb: Vec<usize>,
}

impl FillVertex {
    pub fn plain(target: u64) -> Self {
        FillVertex {
            target,
            absorb: Vec::new(),
        }
    }
}

pub(crate) struct RealizedPart {
    pub part: PartRange,
    pub cert: CliqueCoverCertificate,
    /// The sorted sequence actually realized.
    pub seq: DegreeSeq,
}

/// Realizes one residual part on fresh vertices labelled `label`.
pub(crate) fn realize_part(
    g: &mut MultiGraph,
    mut fill: Vec<FillVertex>,
    pending: &mut Option<usize>,
    label: &str,
) -> Result<RealizedPart> {
    let realized_target = |f: &FillVertex| f.target - f.absorb.len() as u64;
    fill.sort_by(|a, b| {
        (realized_target(a), &a.absorb).cmp(&(realized_target(b), &b.absorb))
    });
    let seq = DegreeSeq::new(fill.iter().map(realized_target).collect())?;
    let r = realize_into(g, &seq, pending)?;
    for (v, f) in r.vertices.clone().zip(&fill) {
        g.set_label(v, label)?;
        for &w in &f.absorb {
            g.add_edge(v, w, 1)?;
        }
    }
    let part = PartRange {
        start: r.vertices.start,
        len: r.vertices.len(),
    };
    let cert = CliqueCoverCertificate::from_ranges(&r.cliques, r.starts);
    Ok(RealizedPart { part, cert, seq })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realize::{degree_sequence_of_interval, realize};

    #[test]
    fn full_realization_conforms() {
        let p = PowerLawParams::new(3.0, 0.8).unwrap();
        let d = degree_sequence_of_interval(&p, 1, p.delta()).unwrap();
        let (g, c) = realize(&d).unwrap();
        let deficits: Vec<usize> = c.parity_deficit.into_iter().collect();
        let conf = check_conformance(&g, &p, &deficits, 1);
        assert!(conf.pass, "{}", conf.describe());
    }

    #[test]
    fn deleted_edge_names_bucket() {
        let p = PowerLawParams::new(2.0, 1.0).unwrap();
        let d = degree_sequence_of_interval(&p, 1, p.delta()).unwrap();
        let (g, c) = realize(&d).unwrap();
        let deficits: Vec<usize> = c.parity_deficit.into_iter().collect();
        // rebuild without the first edge
        let mut h = MultiGraph::new(g.vertex_count());
        for (k, (u, v, m)) in g.edges().enumerate() {
            let m = if k == 0 { m - 1 } else { m };
            if m > 0 {
                h.add_edge(u, v, m).unwrap();
            }
        }
        let conf = check_conformance(&h, &p, &deficits, 1);
        assert!(!conf.pass);
        assert!(conf.describe().contains("degree bucket"));
    }

    #[test]
    fn absorbers_reach_target() {
        let mut g = MultiGraph::new(1);
        let mut pending = None;
        let fill = vec![
            FillVertex::plain(2),
            FillVertex {
                target: 3,
                absorb: vec![0],
            },
            FillVertex::plain(2),
        ];
        let out = realize_part(&mut g, fill, &mut pending, LABEL_G2).unwrap();
        assert_eq!(out.part.len, 3);
        assert_eq!(out.seq.entries(), &[2, 2, 2]);
        assert_eq!(pending, None);
        let mut got = g.degrees()[1..].to_vec();
        got.sort_unstable();
        assert_eq!(got, vec![2, 2, 3]);
        assert_eq!(g.degree(0), 1);
        assert_eq!(out.cert.len(), 1);
    }

    #[test]
    fn slots_expand_counts() {
        let p = PowerLawParams::new(2.0, 1.0).unwrap();
        assert_eq!(slot_degrees(&p, 2, 4), vec![2, 2, 2, 3, 3, 4]);
        assert!(slot_degrees(&p, 5, 4).is_empty());
    }
}
