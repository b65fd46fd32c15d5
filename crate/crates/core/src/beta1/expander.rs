//! Random regular graphs with an explicit spectral certificate.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{PlgError, Result};
use crate::graph::MultiGraph;

/// Additive allowance on `2√(d−1)/d`.
pub const LAMBDA_TOLERANCE: f64 = 0.05;
const MAX_ATTEMPTS: u32 = 32;
const MAX_RESTARTS: u32 = 1000;
/// Dense eigendecomposition is cubic; larger graphs are refused.
const MAX_SPECTRAL_N: usize = 4000;

#[derive(Debug, Clone, PartialEq)]
pub struct ExpanderCertificate {
    pub graph: MultiGraph,
    pub d: usize,
    /// `max(λ₁, |λ_{n−1}|)` of the transition matrix `A/d`.
    pub lambda: f64,
    pub lambda_1: f64,
    pub lambda_min: f64,
    pub passes: bool,
    /// Graphs drawn before this one was accepted.
    pub attempts: u32,
}

/// `2√(d−1)/d`.
pub fn ramanujan_bound(d: usize) -> f64 {
    2.0 * ((d - 1) as f64).sqrt() / d as f64
}

/// Eigenvalues of `A/d`, descending.
pub fn transition_spectrum(g: &MultiGraph, d: usize) -> Result<Vec<f64>> {
    let n = g.vertex_count();
    if n > MAX_SPECTRAL_N {
        return Err(PlgError::Resource(format!(
            "spectrum of {n} vertices exceeds the dense limit {MAX_SPECTRAL_N}"
        )));
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (u, v, mult) in g.edges() {
        let w = mult as f64 / d as f64;
        if u == v {
            m[(u, u)] += 2.0 * w;
        } else {
            m[(u, v)] += w;
            m[(v, u)] += w;
        }
    }
    let mut eig: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    Ok(eig)
}

/// `(λ₁, λ_{n−1})`.
fn second_and_last(eig: &[f64]) -> (f64, f64) {
    match eig.len() {
        0 => (0.0, 0.0),
        1 => (eig[0], eig[0]),
        n => (eig[1], eig[n - 1]),
    }
}

/// Steger–Wormald style pairing: repeatedly joins two random free points on
/// distinct, non-adjacent vertices. `None` when it gets stuck.
fn sample_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n * d).map(|p| p / d).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    let mut edges = Vec::with_capacity(n * d / 2);
    while !points.is_empty() {
        let mut tries = 0usize;
        loop {
            let i = rng.gen_range(0..points.len());
            let j = rng.gen_range(0..points.len());
            let (a, b) = (points[i], points[j]);
            if i != j && a != b && !adj[a].contains(&b) {
                let (hi, lo) = (i.max(j), i.min(j));
                points.swap_remove(hi);
                points.swap_remove(lo);
                adj[a].push(b);
                adj[b].push(a);
                edges.push((a.min(b), a.max(b)));
                break;
            }
            tries += 1;
            if tries > 20 * points.len() + 100 {
                let mut free: Vec<usize> = points.clone();
                free.sort_unstable();
                free.dedup();
                let any = free
                    .iter()
                    .enumerate()
                    .any(|(k, &a)| free[k + 1..].iter().any(|b| !adj[a].contains(b)));
                if !any {
                    return None;
                }
                tries = 0;
            }
        }
    }
    edges.sort_unstable();
    Some(edges)
}

fn certify(graph: MultiGraph, d: usize, attempts: u32) -> Result<ExpanderCertificate> {
    let eig = transition_spectrum(&graph, d)?;
    let (lambda_1, lambda_min) = second_and_last(&eig);
    let lambda = lambda_1.max(lambda_min.abs());
    Ok(ExpanderCertificate {
        graph,
        d,
        lambda,
        lambda_1,
        lambda_min,
        passes: lambda <= ramanujan_bound(d) + LAMBDA_TOLERANCE,
        attempts,
    })
}

/// A simple `d`-regular graph on `n` vertices, drawn from `seed`. Returns the
/// first draw within the spectral tolerance, or the best of 32 draws with
/// `passes = false`. For `n = d + 1` the answer is `K_{d+1}`.
pub fn random_regular_expander(n: usize, d: usize, seed: u64) -> Result<ExpanderCertificate> {
    if d < 3 {
        return Err(PlgError::input(format!("expander degree must be at least 3, got {d}")));
    }
    if d >= n {
        return Err(PlgError::input(format!("degree {d} must be below vertex count {n}")));
    }
    if n * d % 2 == 1 {
        return Err(PlgError::input(format!("n*d = {} is odd", n * d)));
    }
    if n == d + 1 {
        return certify(MultiGraph::complete(n), d, 1);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<ExpanderCertificate> = None;
    for attempt in 1..=MAX_ATTEMPTS {
        let mut edges = None;
        for _ in 0..MAX_RESTARTS {
            edges = sample_regular(n, d, &mut rng);
            if edges.is_some() {
                break;
            }
        }
        let edges = edges.ok_or_else(|| {
            PlgError::Resource(format!("pairing failed {MAX_RESTARTS} times for n={n}, d={d}"))
        })?;
        let cert = certify(MultiGraph::from_edges(n, &edges)?, d, attempt)?;
        if cert.passes {
            return Ok(cert);
        }
        if best.as_ref().is_none_or(|b| cert.lambda < b.lambda) {
            best = Some(cert);
        }
    }
    Ok(best.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Power iteration on `A/d` deflated against the constant vector, in
    /// both `M` and `M + I` forms to recover `λ₁` and `λ_{n−1}` separately.
    fn power_lambda(g: &MultiGraph, d: usize) -> (f64, f64) {
        let n = g.vertex_count();
        let adj = g.adjacency();
        let nb: Vec<Vec<usize>> = (0..n).map(|v| adj.neighbors(v)).collect();
        let apply = |x: &[f64], shift: f64| -> Vec<f64> {
            (0..n)
                .map(|v| nb[v].iter().map(|&w| x[w]).sum::<f64>() / d as f64 + shift * x[v])
                .collect()
        };
        let top = |shift: f64| -> f64 {
            let mut x: Vec<f64> = (0..n).map(|i| ((i * 7919) % 97) as f64 - 48.0).collect();
            let mut val = 0.0;
            for _ in 0..20000 {
                let mean = x.iter().sum::<f64>() / n as f64;
                x.iter_mut().for_each(|v| *v -= mean);
                let y = apply(&x, shift);
                let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
                val = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>()
                    / x.iter().map(|v| v * v).sum::<f64>();
                x = y.iter().map(|v| v / norm).collect();
            }
            val - shift
        };
        // largest of M+I gives λ₁; largest of I−M gives −λ_min
        let l1 = top(1.0);
        let neg = {
            let mut x: Vec<f64> = (0..n).map(|i| ((i * 31) % 17) as f64 - 8.0).collect();
            let mut val = 0.0;
            for _ in 0..20000 {
                let mean = x.iter().sum::<f64>() / n as f64;
                x.iter_mut().for_each(|v| *v -= mean);
                let mx = apply(&x, 0.0);
                let y: Vec<f64> = x.iter().zip(&mx).map(|(a, b)| a - b).collect();
                let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
                val = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>()
                    / x.iter().map(|v| v * v).sum::<f64>();
                x = y.iter().map(|v| v / norm).collect();
            }
            1.0 - val
        };
        (l1, neg)
    }

    #[test]
    fn complete_graph_spectrum() {
        for d in 3..7 {
            let c = random_regular_expander(d + 1, d, 0).unwrap();
            assert!((c.lambda - 1.0 / d as f64).abs() < 1e-8);
            assert!((c.lambda_min + 1.0 / d as f64).abs() < 1e-8);
            assert!(c.passes);
        }
    }

    #[test]
    fn precondition_errors() {
        assert!(random_regular_expander(10, 2, 1).is_err());
        assert!(random_regular_expander(5, 5, 1).is_err());
        assert!(random_regular_expander(7, 3, 1).is_err());
    }

    #[test]
    fn random_regular_is_consistent() {
        let c = random_regular_expander(20, 4, 7).unwrap();
        assert!(c.graph.is_simple());
        assert!(c.graph.degrees().iter().all(|&x| x == 4));
        let (l1, lmin) = power_lambda(&c.graph, 4);
        assert!((l1 - c.lambda_1).abs() < 1e-6, "{l1} vs {}", c.lambda_1);
        assert!((lmin - c.lambda_min).abs() < 1e-6, "{lmin} vs {}", c.lambda_min);
        assert_eq!(c.lambda, c.lambda_1.max(c.lambda_min.abs()));
        assert_eq!(c.passes, c.lambda <= ramanujan_bound(4) + LAMBDA_TOLERANCE);
        assert_eq!(c, random_regular_expander(20, 4, 7).unwrap());
    }

    #[test]
    fn spectrum_top_is_one() {
        let c = random_regular_expander(30, 3, 11).unwrap();
        let s = transition_spectrum(&c.graph, 3).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-10);
    }
}
