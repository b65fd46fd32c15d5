//! End-to-end re-check of an embedding against its report.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::beta1::{self, good_walk_product, random_regular_expander, DEFAULT_WALK_CAP};
use crate::embed::{check_conformance, LABEL_EMBEDDED};
use crate::graph::MultiGraph;
use crate::mis::{exact_mis, DEFAULT_BUDGET};
use crate::model::PowerLawParams;
use crate::par::Exec;
use crate::report::{EmbeddingKind, EmbeddingReport};
use crate::sublinear::{self, double_graph};

const REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub checks: Vec<CheckOutcome>,
}

impl Verdict {
    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.pass)
    }
}

type Outcome = std::result::Result<String, String>;

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= REL_TOL * a.abs().max(b.abs()).max(1.0)
}

/// Distinct non-loop adjacency, as sorted pairs.
fn support(g: &MultiGraph) -> BTreeSet<(usize, usize)> {
    g.edges().filter(|&(u, v, _)| u != v).map(|(u, v, _)| (u, v)).collect()
}

fn check_conformance_of(plg: &MultiGraph, r: &EmbeddingReport) -> Outcome {
    let p = PowerLawParams::new(r.alpha, r.beta).map_err(|e| e.to_string())?;
    if p.delta() != r.delta {
        return Err(format!("recorded delta {} but parameters give {}", r.delta, p.delta()));
    }
    let c = check_conformance(plg, &p, &r.conformance.deficit_vertices, r.conformance.max_deficits);
    if c.pass {
        Ok(format!("{} vertices match", plg.vertex_count()))
    } else {
        Err(c.describe())
    }
}

fn check_certificates(plg: &MultiGraph, r: &EmbeddingReport) -> Outcome {
    for (name, cert) in &r.certificates {
        let part = r
            .part(name)
            .ok_or_else(|| format!("certificate {name} has no part"))?;
        let ids: Vec<usize> = part.ids().collect();
        cert.check(plg, &ids).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} certificates", r.certificates.len()))
}

fn check_witness(plg: &MultiGraph, r: &EmbeddingReport) -> Outcome {
    if !plg.is_independent(&r.witness).map_err(|e| e.to_string())? {
        return Err("witness is not independent".into());
    }
    let part = r
        .part(LABEL_EMBEDDED)
        .ok_or("report has no embedded part")?;
    if r.witness.iter().any(|v| !part.ids().contains(&v)) {
        return Err("witness leaves the embedded part".into());
    }
    Ok(format!("{} vertices", r.witness.len()))
}

/// The embedded part of `plg` must carry exactly the adjacency of `expected`.
fn compare_embedded(plg: &MultiGraph, r: &EmbeddingReport, expected: &MultiGraph) -> Outcome {
    let part = r
        .part(LABEL_EMBEDDED)
        .ok_or("report has no embedded part")?;
    if part.start != 0 || part.len != expected.vertex_count() {
        return Err(format!(
            "embedded part has {} vertices, expected {}",
            part.len,
            expected.vertex_count()
        ));
    }
    let ids: Vec<usize> = part.ids().collect();
    let sub = plg.induced_subgraph(&ids).map_err(|e| e.to_string())?;
    if let Some(v) = (0..sub.vertex_count()).find(|&v| sub.has_self_loop(v)) {
        return Err(format!("embedded vertex {v} has a self-loop"));
    }
    let (got, want) = (support(&sub), support(expected));
    if let Some(e) = want.symmetric_difference(&got).next() {
        return Err(format!("embedded adjacency differs at {e:?}"));
    }
    Ok(format!("{} edges", want.len()))
}

fn check_structure(plg: &MultiGraph, r: &EmbeddingReport, original: &MultiGraph) -> Outcome {
    match r.kind {
        EmbeddingKind::Sub1 => {
            let doubled = double_graph(original).map_err(|e| e.to_string())?;
            let pairs: Vec<Vec<usize>> =
                (0..original.vertex_count()).map(|i| vec![2 * i, 2 * i + 1]).collect();
            if r.embedding != pairs {
                return Err("embedding map is not the vertex doubling".into());
            }
            compare_embedded(plg, r, &doubled)
        }
        EmbeddingKind::Beta1 => {
            let b = r.beta1.as_ref().ok_or("report has no beta1 section")?;
            let h = random_regular_expander(original.vertex_count(), b.d, b.seed)
                .map_err(|e| e.to_string())?;
            if !close(h.lambda, b.lambda) {
                return Err(format!("expander lambda {} but report says {}", h.lambda, b.lambda));
            }
            let cap = DEFAULT_WALK_CAP.max(b.n_embedded);
            let (walks, product) = good_walk_product(original, &h, b.k, cap, Exec::default())
                .map_err(|e| e.to_string())?;
            if walks != r.embedding {
                return Err("embedded walks differ from the rebuilt product".into());
            }
            compare_embedded(plg, r, &product)
        }
    }
}

fn compare_bounds(r: &EmbeddingReport, expected: &[(String, f64)]) -> Outcome {
    for (key, want) in expected {
        match r.bounds.get(key) {
            Some(&got) if close(got, *want) => {}
            Some(&got) => return Err(format!("{key}: report {got}, recomputed {want}")),
            None => return Err(format!("{key} missing from report")),
        }
    }
    Ok(format!("{} values", expected.len()))
}

fn check_closed_forms(r: &EmbeddingReport, original: &MultiGraph) -> Outcome {
    match r.kind {
        EmbeddingKind::Sub1 => {
            let p = sublinear::params_from_report(r).map_err(|e| e.to_string())?;
            if p.delta != r.delta {
                return Err(format!("recomputed delta {} differs", p.delta));
            }
            let expected: Vec<(String, f64)> =
                sublinear::closed_form_bounds(&p).into_iter().collect();
            compare_bounds(r, &expected)
        }
        EmbeddingKind::Beta1 => {
            let b = r.beta1.as_ref().ok_or("report has no beta1 section")?;
            let p = beta1::params_from_report(r).map_err(|e| e.to_string())?;
            if !close(p.x, r.x) || p.delta != r.delta {
                return Err(format!("recomputed x={} delta={} differ", p.x, p.delta));
            }
            let is_g = exact_mis(original, DEFAULT_BUDGET)
                .map_err(|e| e.to_string())?
                .size;
            let (lo, hi) = beta1::alon_interval(
                is_g,
                original.vertex_count(),
                b.d,
                b.lambda_1,
                b.lambda_min,
                b.k,
            )
            .map_err(|e| e.to_string())?;
            let mut expected: Vec<(String, f64)> =
                beta1::closed_form_bounds(&p).into_iter().collect();
            expected.push(("alon_lo".into(), lo));
            expected.push(("alon_hi".into(), hi));
            expected.push(("base_independence".into(), is_g as f64));
            let walks = beta1::walks_within(
                &random_regular_expander(original.vertex_count(), b.d, b.seed)
                    .map_err(|e| e.to_string())?
                    .graph,
                &exact_mis(original, DEFAULT_BUDGET).map_err(|e| e.to_string())?.witness,
                b.k,
            );
            expected.push(("witness_walk_count".into(), walks as f64));
            let (gap, _) = beta1::gap_for(b.lambda, b.k, original.vertex_count(), b.d)
                .map_err(|e| e.to_string())?;
            if gap != b.gap_ratio {
                return Err("gap ratio record differs".into());
            }
            if beta1::layered_is_bound(&p) != b.layered_bound {
                return Err("layered bound record differs".into());
            }
            compare_bounds(r, &expected)
        }
    }
}

/// Runs every check; none short-circuits the others.
pub fn verify_embedding(plg: &MultiGraph, report: &EmbeddingReport, original: &MultiGraph) -> Verdict {
    let checks: Vec<(&str, Outcome)> = vec![
        ("conformance", check_conformance_of(plg, report)),
        ("certificates", check_certificates(plg, report)),
        ("witness", check_witness(plg, report)),
        ("embedding", check_structure(plg, report, original)),
        ("closed_forms", check_closed_forms(report, original)),
    ];
    let checks: Vec<CheckOutcome> = checks
        .into_iter()
        .map(|(name, o)| {
            let (pass, detail) = match o {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome {
                name: name.to_string(),
                pass,
                detail,
            }
        })
        .collect();
    Verdict {
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}
