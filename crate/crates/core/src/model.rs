//! Degree counts, totals and interval size/volume brackets of (α,β)
//! power-law graphs.
//!
//! An (α,β)-PLG has maximum degree `Δ = ⌊e^{α/β}⌋` and exactly
//! `y_i = ⌊e^α / i^β⌋` vertices of degree `i` for `i = 1..=Δ`. Sums over
//! degree ranges are evaluated exactly by grouping maximal runs of equal
//! `y_i`, so intervals with `Δ` in the hundreds of millions stay cheap.

use serde::{Deserialize, Serialize};

use crate::error::{PlgError, Result};
use crate::par::Exec;

/// Largest representable Δ exponent: keeps `Δ` below 2^52.
const MAX_LOG_DELTA: f64 = 36.0;

/// `⌊e^t⌋` with a guard at integer boundaries.
///
/// When `e^t` lands within 1e-9 (relative) of an integer `r`, `r` is accepted
/// iff `ln r ≤ t` up to 1e-12 relative, so parameters chosen as logarithms of
/// integers floor to that integer instead of one below it.
pub(crate) fn floor_exp(t: f64) -> u64 {
    let v = t.exp();
    let r = v.round();
    if r >= 1.0 && (v - r).abs() <= 1e-9 * v.max(1.0) {
        if r.ln() <= t + 1e-12 * t.abs().max(1.0) {
            r as u64
        } else {
            r as u64 - 1
        }
    } else {
        v.floor() as u64
    }
}

/// `⌈v⌉` and `⌊v⌋` that snap to an integer within 1e-9 (relative).
pub(crate) fn ceil_snap(v: f64) -> u64 {
    let r = v.round();
    if (v - r).abs() <= 1e-9 * v.abs().max(1.0) {
        r.max(0.0) as u64
    } else {
        v.ceil().max(0.0) as u64
    }
}

pub(crate) fn floor_snap(v: f64) -> u64 {
    let r = v.round();
    if (v - r).abs() <= 1e-9 * v.abs().max(1.0) {
        r.max(0.0) as u64
    } else {
        v.floor().max(0.0) as u64
    }
}

pub(crate) fn is_beta_one(beta: f64) -> bool {
    (beta - 1.0).abs() < 1e-12
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawParams {
    alpha: f64,
    beta: f64,
    delta: u64,
}

impl PowerLawParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(PlgError::input(format!("alpha must be positive, got {alpha}")));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(PlgError::input(format!("beta must be positive, got {beta}")));
        }
        if alpha / beta > MAX_LOG_DELTA {
            return Err(PlgError::input(format!(
                "alpha/beta = {} exceeds {MAX_LOG_DELTA}: maximum degree too large",
                alpha / beta
            )));
        }
        let delta = floor_exp(alpha / beta).max(1);
        Ok(PowerLawParams { alpha, beta, delta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn exp_alpha(&self) -> f64 {
        self.alpha.exp()
    }

    /// `y_i`, zero outside `1..=Δ`.
    pub fn count(&self, i: u64) -> u64 {
        if i == 0 || i > self.delta {
            0
        } else {
            floor_exp(self.alpha - self.beta * (i as f64).ln())
        }
    }

    /// Last degree `j ≥ i` (capped at Δ) with `y_j == y_i`.
    fn run_end(&self, i: u64) -> u64 {
        let c = self.count(i);
        if c == 0 {
            return self.delta;
        }
        let est = floor_exp((self.alpha - (c as f64).ln()) / self.beta.max(1e-300));
        let mut j = est.clamp(i, self.delta);
        while j > i && self.count(j) < c {
            j -= 1;
        }
        while j < self.delta && self.count(j + 1) == c {
            j += 1;
        }
        j
    }

    /// Maximal runs `(first, last, y)` covering `[a, b] ∩ [1, Δ]`.
    pub(crate) fn runs(&self, a: u64, b: u64) -> impl Iterator<Item = (u64, u64, u64)> + '_ {
        let mut i = a.max(1);
        let b = b.min(self.delta);
        std::iter::from_fn(move || {
            if i > b {
                return None;
            }
            let c = self.count(i);
            let j = self.run_end(i).min(b);
            let run = (i, j, c);
            i = j + 1;
            Some(run)
        })
    }

    /// `Σ_{i=a}^{b} y_i`.
    pub fn count_sum(&self, a: u64, b: u64) -> u64 {
        self.runs(a, b).map(|(i, j, c)| c * (j - i + 1)).sum()
    }

    /// `Σ_{i=a}^{b} i·y_i`.
    pub fn volume_sum(&self, a: u64, b: u64) -> u128 {
        self.runs(a, b)
            .map(|(i, j, c)| {
                let (i, j) = (i as u128, j as u128);
                c as u128 * (i + j) * (j - i + 1) / 2
            })
            .sum()
    }
}

/// `y_1, …, y_Δ`.
pub fn plg_degree_counts(p: &PowerLawParams) -> Vec<u64> {
    (1..=p.delta()).map(|i| p.count(i)).collect()
}

/// Riemann zeta for `s > 1`: partial sum plus an Euler–Maclaurin tail,
/// absolute error below 1e-9.
pub fn zeta(s: f64) -> Result<f64> {
    if !(s > 1.0 && s.is_finite()) {
        return Err(PlgError::input(format!("zeta requires s > 1, got {s}")));
    }
    // B_2/2!, B_4/4!, B_6/4!, B_8/8!
    const COEF: [f64; 4] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0];
    let mut n = 16u64;
    loop {
        let nf = n as f64;
        // rising factorial s(s+1)…(s+2k-2) for the k-th correction
        let mut rising = s;
        let mut corrections = 0.0;
        let mut next = 0.0;
        for (k, c) in COEF.iter().enumerate() {
            let term = c * rising * nf.powf(-s - (2 * k + 1) as f64);
            if k < 3 {
                corrections += term;
            } else {
                next = term;
            }
            rising *= (s + (2 * k + 1) as f64) * (s + (2 * k + 2) as f64);
        }
        if next.abs() < 1e-11 {
            let head: f64 = (1..n).rev().map(|i| (i as f64).powf(-s)).sum();
            return Ok(head + nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s) + corrections);
        }
        n *= 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub n_exact: u64,
    pub edge_half_sum_exact: f64,
    pub n_estimate: f64,
    pub m_estimate: f64,
}

/// Exact vertex count and half degree sum, plus the closed-form estimates
/// for `n` (cases β<1, β=1, β>1) and `m` (cases β<2, β=2, β>2).
pub fn plg_totals(p: &PowerLawParams) -> Result<Totals> {
    let (alpha, beta) = (p.alpha(), p.beta());
    let e_a = p.exp_alpha();
    let n_estimate = if is_beta_one(beta) {
        alpha * e_a
    } else if beta < 1.0 {
        (alpha / beta).exp() / (1.0 - beta)
    } else {
        zeta(beta)? * e_a
    };
    let m_estimate = if (beta - 2.0).abs() < 1e-12 {
        0.25 * alpha * e_a
    } else if beta < 2.0 {
        0.5 * (2.0 * alpha / beta).exp() / (2.0 - beta)
    } else {
        0.5 * zeta(beta - 1.0)? * e_a
    };
    Ok(Totals {
        n_exact: p.count_sum(1, p.delta()),
        edge_half_sum_exact: p.volume_sum(1, p.delta()) as f64 / 2.0,
        n_estimate,
        m_estimate,
    })
}

/// The vertex set `[a, b] = {v : a ≤ deg(v) ≤ b}` of a PLG.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeInterval {
    low: u64,
    high: u64,
    params: PowerLawParams,
}

impl DegreeInterval {
    pub fn new(params: PowerLawParams, low: u64, high: u64) -> Result<Self> {
        if low < 1 || low > high || high > params.delta() {
            return Err(PlgError::input(format!(
                "interval [{low}, {high}] not within [1, {}]",
                params.delta()
            )));
        }
        Ok(DegreeInterval { low, high, params })
    }

    /// `[⌈xΔ⌉, ⌊yΔ⌋]`, or `None` when rounding leaves it empty.
    pub fn from_fractions(params: PowerLawParams, x: f64, y: f64) -> Option<Self> {
        let d = params.delta() as f64;
        let low = ceil_snap(x * d).max(1);
        let high = floor_snap(y * d).min(params.delta());
        (low <= high).then_some(DegreeInterval { low, high, params })
    }

    pub fn low(&self) -> u64 {
        self.low
    }

    pub fn high(&self) -> u64 {
        self.high
    }

    pub fn params(&self) -> &PowerLawParams {
        &self.params
    }

    pub fn size(&self) -> u64 {
        self.params.count_sum(self.low, self.high)
    }

    pub fn volume(&self) -> u128 {
        self.params.volume_sum(self.low, self.high)
    }
}

/// A closed-form bracket with the exact value obtained by summation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
    pub exact: u128,
}

impl BoundPair {
    pub fn contains_with_slack(&self, slack: f64) -> bool {
        let e = self.exact as f64;
        e >= self.lower - slack && e <= self.upper + slack
    }

    /// `(exact − lower, upper − exact)`; negative entries are breaches.
    pub fn residuals(&self) -> (f64, f64) {
        let e = self.exact as f64;
        (e - self.lower, self.upper - e)
    }
}

fn check_fractions(p: &PowerLawParams, x: f64, y: f64) -> Result<()> {
    if !(x > 0.0 && x <= y && y <= 1.0) {
        return Err(PlgError::input(format!("need 0 < x <= y <= 1, got x={x}, y={y}")));
    }
    if p.beta() > 1.0 && !is_beta_one(p.beta()) {
        return Err(PlgError::Unsupported(format!(
            "interval brackets are only defined for beta <= 1, got {}",
            p.beta()
        )));
    }
    Ok(())
}

/// Bracket for `|[xΔ, yΔ]|`.
pub fn interval_size_bounds(p: &PowerLawParams, x: f64, y: f64) -> Result<BoundPair> {
    check_fractions(p, x, y)?;
    let beta = p.beta();
    let d = p.delta() as f64;
    let (lower, upper) = if is_beta_one(beta) {
        let e_a = p.exp_alpha();
        let upper = e_a * ((1.0 / x).ln() - (1.0 / y).ln());
        (upper - (y - x) * e_a, upper)
    } else {
        let upper = d / (1.0 - beta) * (y.powf(1.0 - beta) - x.powf(1.0 - beta));
        (upper - (x.powf(-beta) - y.powf(-beta)), upper)
    };
    let exact = DegreeInterval::from_fractions(*p, x, y).map_or(0, |iv| iv.size() as u128);
    Ok(BoundPair {
        lower,
        upper,
        exact,
    })
}

/// Bracket for `vol([xΔ, yΔ])`.
pub fn interval_volume_bounds(p: &PowerLawParams, x: f64, y: f64) -> Result<BoundPair> {
    check_fractions(p, x, y)?;
    let beta = p.beta();
    let d = p.delta() as f64;
    let (lower, upper) = if is_beta_one(beta) {
        let upper = p.exp_alpha() * (y - x) * d;
        let tri = |t: f64| t * d * (t * d + 1.0) / 2.0;
        (upper - (tri(y) - tri(x)), upper)
    } else {
        let b2 = 2.0 - beta;
        let b1 = 1.0 - beta;
        let integral = (y.powf(b2) - x.powf(b2)) / b2;
        let lower = d * d * (integral - (y * y - x * x) / 2.0)
            - d * (y.powf(b1) - x.powf(b1) - (y - x) / 2.0);
        (lower, d * d * integral)
    };
    let exact = DegreeInterval::from_fractions(*p, x, y).map_or(0, |iv| iv.volume());
    Ok(BoundPair {
        lower,
        upper,
        exact,
    })
}

/// One grid point of the interval-bracket containment sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContainmentRecord {
    pub alpha: f64,
    pub beta: f64,
    pub x: f64,
    pub y: f64,
    pub delta: u64,
    pub size: BoundPair,
    pub volume: BoundPair,
    pub size_ok: bool,
    pub volume_ok: bool,
}

/// Evaluates both brackets at every `(alpha, beta, x, y)` point with additive
/// slack 2 (size) and 2Δ (volume).
pub fn containment_sweep(points: &[(f64, f64, f64, f64)], exec: Exec) -> Result<Vec<ContainmentRecord>> {
    exec.map(points, |&(alpha, beta, x, y)| {
        let p = PowerLawParams::new(alpha, beta)?;
        let size = interval_size_bounds(&p, x, y)?;
        let volume = interval_volume_bounds(&p, x, y)?;
        Ok(ContainmentRecord {
            alpha,
            beta,
            x,
            y,
            delta: p.delta(),
            size,
            volume,
            size_ok: size.contains_with_slack(2.0),
            volume_ok: volume.contains_with_slack(2.0 * p.delta() as f64),
        })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct `⌊e^α / i^β⌋`, no runs, no guard.
    fn naive_counts(alpha: f64, beta: f64, delta: u64) -> Vec<u64> {
        (1..=delta)
            .map(|i| (alpha.exp() / (i as f64).powf(beta)).floor() as u64)
            .collect()
    }

    #[test]
    fn counts_alpha2_beta1() {
        let p = PowerLawParams::new(2.0, 1.0).unwrap();
        assert_eq!(p.delta(), 7);
        assert_eq!(plg_degree_counts(&p), vec![7, 3, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn counts_alpha2_beta_half() {
        let p = PowerLawParams::new(2.0, 0.5).unwrap();
        assert_eq!(p.delta(), 54);
        let c = plg_degree_counts(&p);
        assert_eq!(c[0], 7);
        assert_eq!(c, naive_counts(2.0, 0.5, 54));
    }

    #[test]
    fn first_count_is_floor_exp_alpha() {
        for &(a, b) in &[(1.3, 0.4), (2.7, 1.0), (3.1, 2.5), (0.2, 0.9)] {
            let p = PowerLawParams::new(a, b).unwrap();
            assert_eq!(p.count(1), a.exp().floor() as u64);
        }
    }

    #[test]
    fn counts_non_increasing_and_runs_match_direct_sums() {
        for &(a, b) in &[(3.0, 0.3), (4.0, 0.5), (5.0, 0.8), (6.0, 1.0), (2.0, 1.7)] {
            let p = PowerLawParams::new(a, b).unwrap();
            let c = plg_degree_counts(&p);
            assert!(c.windows(2).all(|w| w[0] >= w[1]));
            let d = p.delta();
            for &(lo, hi) in &[(1, d), (1, 1), (d / 3 + 1, d / 2 + 1), (d, d)] {
                let direct: u64 = (lo..=hi).map(|i| c[i as usize - 1]).sum();
                let vol: u128 = (lo..=hi).map(|i| i as u128 * c[i as usize - 1] as u128).sum();
                assert_eq!(p.count_sum(lo, hi), direct);
                assert_eq!(p.volume_sum(lo, hi), vol);
            }
        }
    }

    #[test]
    fn delta_guard_hits_integer_boundary() {
        // alpha = 0.5 * ln 16 should give Δ = 16 exactly
        let p = PowerLawParams::new(0.5 * 16f64.ln(), 0.5).unwrap();
        assert_eq!(p.delta(), 16);
        let p = PowerLawParams::new(20f64.ln(), 1.0).unwrap();
        assert_eq!(p.delta(), 20);
        assert_eq!(p.count(1), 20);
        // just below the boundary
        let p = PowerLawParams::new(20f64.ln() - 1e-8, 1.0).unwrap();
        assert_eq!(p.delta(), 19);
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        assert!(PowerLawParams::new(0.0, 1.0).is_err());
        assert!(PowerLawParams::new(1.0, -0.5).is_err());
        assert!(PowerLawParams::new(f64::NAN, 1.0).is_err());
    }

    /// Partial sum with integral tail enclosure: Σ_{i≤M} + [∫_{M+1}^∞, ∫_M^∞].
    fn zeta_oracle(s: f64) -> (f64, f64) {
        let m = 200_000u64;
        let head: f64 = (1..=m).rev().map(|i| (i as f64).powf(-s)).sum();
        let lo = head + ((m + 1) as f64).powf(1.0 - s) / (s - 1.0);
        let hi = head + (m as f64).powf(1.0 - s) / (s - 1.0);
        (lo, hi)
    }

    #[test]
    fn zeta_matches_series_oracle() {
        for &s in &[1.5, 2.0, 3.0, 4.5] {
            let z = zeta(s).unwrap();
            let (lo, hi) = zeta_oracle(s);
            assert!(z >= lo - 1e-9 && z <= hi + 1e-9, "s={s}: {z} not in [{lo}, {hi}]");
        }
        assert!((zeta(2.0).unwrap() - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
        assert!(zeta(1.0).is_err());
    }

    #[test]
    fn totals_examples() {
        let p = PowerLawParams::new(2.0, 1.0).unwrap();
        let t = plg_totals(&p).unwrap();
        assert_eq!(t.n_exact, 16);
        assert!((t.n_estimate - 2.0 * 2f64.exp()).abs() < 1e-12);
        assert!((t.n_estimate - 14.778).abs() < 1e-3);
        // 7·1 + 3·2 + 2·3 + 4 + 5 + 6 + 7 = 41
        assert_eq!(t.edge_half_sum_exact, 20.5);

        let p = PowerLawParams::new(2.0, 0.5).unwrap();
        let t = plg_totals(&p).unwrap();
        assert!((t.n_estimate - 4f64.exp() / 0.5).abs() < 1e-9);
        let direct: u64 = naive_counts(2.0, 0.5, 54).iter().sum();
        assert_eq!(t.n_exact, direct);
        // floors cost at most one per degree
        let slack = 2f64.exp() / 0.5 + p.delta() as f64;
        assert!(t.n_exact as f64 <= t.n_estimate);
        assert!(t.n_exact as f64 >= t.n_estimate - slack);

        let p = PowerLawParams::new(2.0, 3.0).unwrap();
        let t = plg_totals(&p).unwrap();
        let (lo, hi) = zeta_oracle(3.0);
        let e2 = 2f64.exp();
        assert!(t.n_estimate >= lo * e2 - 1e-8 && t.n_estimate <= hi * e2 + 1e-8);
        assert!((t.n_estimate - 8.88).abs() < 0.01);
    }

    #[test]
    fn m_estimate_cases() {
        let p = PowerLawParams::new(3.0, 2.0).unwrap();
        assert!((plg_totals(&p).unwrap().m_estimate - 0.25 * 3.0 * 3f64.exp()).abs() < 1e-9);
        let p = PowerLawParams::new(3.0, 3.0).unwrap();
        let expect = 0.5 * std::f64::consts::PI.powi(2) / 6.0 * 3f64.exp();
        assert!((plg_totals(&p).unwrap().m_estimate - expect).abs() < 1e-8);
        let p = PowerLawParams::new(2.0, 1.0).unwrap();
        assert!((plg_totals(&p).unwrap().m_estimate - 0.5 * 4f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn size_bracket_examples() {
        let p = PowerLawParams::new(2.0, 0.5).unwrap();
        let b = interval_size_bounds(&p, 0.25, 1.0).unwrap();
        assert!((b.upper - p.delta() as f64).abs() < 1e-9);

        let p = PowerLawParams::new(3.0, 1.0).unwrap();
        let b = interval_size_bounds(&p, 0.4, 0.4).unwrap();
        assert_eq!(b.upper, 0.0);

        let b = interval_size_bounds(&p, 0.2, 1.0).unwrap();
        let e3 = 3f64.exp();
        assert!((b.upper - e3 * 5f64.ln()).abs() < 1e-9);
        assert!((b.lower - (e3 * 5f64.ln() - 0.8 * e3)).abs() < 1e-9);
        // Δ = 20, degrees 4..=20: Σ ⌊e³/i⌋
        let direct: u64 = (4..=20).map(|i| (e3 / i as f64).floor() as u64).sum();
        assert_eq!(b.exact, direct as u128);
        assert!(b.contains_with_slack(2.0));
    }

    #[test]
    fn volume_bracket_examples() {
        let p = PowerLawParams::new(3.0, 1.0).unwrap();
        let b = interval_volume_bounds(&p, 0.5, 1.0).unwrap();
        assert_eq!(p.delta(), 20);
        assert!((b.upper - 3f64.exp() * 0.5 * 20.0).abs() < 1e-9);
        assert!((b.upper - 200.855).abs() < 1e-3);

        for &(a, beta) in &[(2.0, 0.5), (3.0, 1.0), (1.5, 0.8)] {
            let p = PowerLawParams::new(a, beta).unwrap();
            let iv = DegreeInterval::new(p, p.delta(), p.delta()).unwrap();
            if p.count(p.delta()) == 1 {
                assert_eq!(iv.volume(), p.delta() as u128);
            }
        }

        let p = PowerLawParams::new(2.0, 0.5).unwrap();
        let b = interval_volume_bounds(&p, 0.3, 1.0).unwrap();
        // direct summation over [⌈0.3·54⌉, 54] = [17, 54]
        let direct: u128 = (17..=54u64)
            .map(|i| i as u128 * (2f64.exp() / (i as f64).sqrt()).floor() as u128)
            .sum();
        assert_eq!(b.exact, direct);
        assert!(b.exact as f64 >= b.lower - 2.0);
    }

    #[test]
    fn brackets_reject_beta_above_one() {
        let p = PowerLawParams::new(2.0, 1.5).unwrap();
        assert!(matches!(
            interval_size_bounds(&p, 0.1, 0.5),
            Err(PlgError::Unsupported(_))
        ));
        let p = PowerLawParams::new(2.0, 0.5).unwrap();
        assert!(interval_size_bounds(&p, 0.6, 0.5).is_err());
        assert!(interval_volume_bounds(&p, 0.0, 0.5).is_err());
    }

    #[test]
    fn sweep_modes_agree() {
        let pts: Vec<_> = [0.5, 1.0]
            .iter()
            .flat_map(|&b| [(2.0, b, 0.1, 0.9), (3.0, b, 0.3, 0.6)])
            .collect();
        let a = containment_sweep(&pts, Exec::Sequential).unwrap();
        let b = containment_sweep(&pts, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
