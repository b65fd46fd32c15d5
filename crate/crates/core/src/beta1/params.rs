//! Parameter selection and the closed-form estimates of the β=1 embedding.

use serde::{Deserialize, Serialize};

use crate::error::{PlgError, Result};
use crate::model::{ceil_snap, floor_snap, PowerLawParams};
use crate::realize::ceiling_sum;

const MAX_BUMPS: u32 = 64;

/// The walk-length window and the chosen `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KWindow {
    pub k_l: f64,
    pub k_u: f64,
    pub k: usize,
    /// `d^{k−1}·3k²`.
    pub delta_k: f64,
    /// Set when the integer window was empty.
    pub warning: bool,
}

/// `k_l = lnln n/(3 ln d)`, `k_u = lnln n/ln d`; picks the integer `k` in
/// `[max(1,⌈k_l⌉), max(1,⌊k_u⌋)]` whose `Δ_k` is closest to `ln n` in log
/// scale. Needs `ln ln n > 0`.
pub fn choose_k(n: f64, d: f64) -> Result<KWindow> {
    if n.is_nan() || n <= std::f64::consts::E {
        return Err(PlgError::input(format!("choose_k needs n > e, got {n}")));
    }
    if d.is_nan() || d <= 1.0 {
        return Err(PlgError::input(format!("choose_k needs d > 1, got {d}")));
    }
    let lnln = n.ln().ln();
    let k_l = lnln / (3.0 * d.ln());
    let k_u = lnln / d.ln();
    let delta_k = |k: usize| d.powi(k as i32 - 1) * 3.0 * (k * k) as f64;
    let lo = (k_l.ceil() as usize).max(1);
    let hi = (k_u.floor() as usize).max(1);
    let (k, warning) = if lo <= hi {
        let k = (lo..=hi)
            .min_by(|&a, &b| {
                let da = (delta_k(a).ln() - lnln).abs();
                let db = (delta_k(b).ln() - lnln).abs();
                da.total_cmp(&db)
            })
            .expect("non-empty window");
        (k, false)
    } else {
        (hi, true)
    };
    Ok(KWindow {
        k_l,
        k_u,
        k,
        delta_k: delta_k(k),
        warning,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beta1Params {
    pub n_d: u64,
    pub alpha: f64,
    pub x: f64,
    pub delta: u64,
    pub h: f64,
    pub l: u64,
    pub bumps: u32,
}

/// `e^t`, snapped to a nearby integer.
fn exp_snapped(t: f64) -> f64 {
    let v = t.exp();
    let r = v.round();
    if (v - r).abs() <= 1e-9 * v.max(1.0) {
        r
    } else {
        v
    }
}

impl Beta1Params {
    /// `x = α/e^α`, `h = √(e^α/α)`, `L = max(1, round(α))`.
    pub fn for_alpha(n_d: u64, alpha: f64, bumps: u32) -> Result<Self> {
        let p = PowerLawParams::new(alpha, 1.0)?;
        let e_a = exp_snapped(alpha);
        Ok(Beta1Params {
            n_d,
            alpha,
            x: alpha / e_a,
            delta: p.delta(),
            h: (e_a / alpha).sqrt(),
            l: (alpha.round() as u64).max(1),
            bumps,
        })
    }

    pub fn plg(&self) -> PowerLawParams {
        PowerLawParams::new(self.alpha, 1.0).expect("validated on construction")
    }

    /// `⌈xΔ⌉`.
    pub fn slot_low(&self) -> u64 {
        ceil_snap(self.x * self.delta as f64).max(1)
    }

    /// (I) `n_d ≤ |[⌈xΔ⌉, Δ]|`.
    pub fn condition_one(&self) -> bool {
        let low = self.slot_low();
        low <= self.delta && self.plg().count_sum(low, self.delta) >= self.n_d
    }

    /// (II) `ln n_d ≤ xΔ`.
    pub fn condition_two(&self) -> bool {
        (self.n_d as f64).ln() <= self.x * self.delta as f64 * (1.0 + 1e-12)
    }

    pub(crate) fn bumped(&self) -> Result<Self> {
        if self.bumps >= MAX_BUMPS {
            return Err(PlgError::Internal(format!(
                "no feasible alpha after {MAX_BUMPS} increments"
            )));
        }
        let step = (1.0 + 1.0 / self.n_d as f64).ln();
        Beta1Params::for_alpha(self.n_d, self.alpha + step, self.bumps + 1)
    }
}

/// `α = ln n_d`, raised by `ln(1 + 1/n_d)` until (I) and (II) hold.
pub fn choose_params_beta1(n_d: u64) -> Result<Beta1Params> {
    if n_d < 3 {
        return Err(PlgError::input(format!("n_d must be at least 3, got {n_d}")));
    }
    let mut p = Beta1Params::for_alpha(n_d, (n_d as f64).ln(), 0)?;
    while !(p.condition_one() && p.condition_two()) {
        p = p.bumped()?;
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayeredBound {
    /// `Σ_j ⌈(Σ_{i ∈ layer j} y_i) / B_j⌉`.
    pub exact: u64,
    /// `(e^α/L)·(1 − α/e^α)/(1 − (α/e^α)^{1/L})`.
    pub asymptotic: f64,
    /// `⌈Σ_{i=B_0}^{Δ} y_i / B_0⌉`.
    pub naive: u64,
    /// Layer lower ends `B_j = min(⌈xΔh^j⌉, Δ)`.
    pub boundaries: Vec<u64>,
}

/// Splits `[⌈xΔ⌉, Δ]` into `L` geometric layers and bounds the independence
/// number of a clique-cover realization layer by layer.
pub fn layered_is_bound(p: &Beta1Params) -> LayeredBound {
    let plg = p.plg();
    let d = p.delta;
    let xd = p.x * d as f64;
    let boundaries: Vec<u64> = (0..p.l)
        .map(|j| ceil_snap(xd * p.h.powi(j as i32)).clamp(1, d))
        .collect();
    let mut exact = 0;
    for (j, &b) in boundaries.iter().enumerate() {
        let end = match boundaries.get(j + 1) {
            Some(&next) => next.saturating_sub(1),
            None => d,
        };
        if end >= b {
            exact += plg.count_sum(b, end).div_ceil(b);
        }
    }
    let b0 = boundaries[0];
    let naive = plg.count_sum(b0, d).div_ceil(b0);
    let e_a = exp_snapped(p.alpha);
    let r = p.alpha / e_a;
    let l = p.l as f64;
    LayeredBound {
        exact,
        asymptotic: e_a / l * (1.0 - r) / (1.0 - r.powf(1.0 / l)),
        naive,
        boundaries,
    }
}

/// `Σ_{i=1}^{⌊xΔ⌋} ⌈y_i/i⌉` and the closed form `α + e^α(2 − 1/α − 1/α²)`.
pub fn low_interval_bound(p: &Beta1Params) -> (u64, f64) {
    let top = floor_snap(p.x * p.delta as f64).min(p.delta);
    let exact = if top >= 1 { ceiling_sum(&p.plg(), 1, top) } else { 0 };
    let a = p.alpha;
    (exact, a + a.exp() * (2.0 - 1.0 / a - 1.0 / (a * a)))
}

/// Bracket on the independence number of the walk product:
/// `is_g·d^{k−1}·(is_g/n + λ(1 − is_g/n))^{k−1}` with `λ = λ_min` (lower)
/// and `λ = λ₁` (upper); the lower end is clamped at 0.
pub fn alon_interval(
    is_g: usize,
    n: usize,
    d: usize,
    lambda_1: f64,
    lambda_min: f64,
    k: usize,
) -> Result<(f64, f64)> {
    if is_g > n || n == 0 {
        return Err(PlgError::input(format!("need 0 <= is_g <= n, got {is_g} of {n}")));
    }
    if k == 0 {
        return Err(PlgError::input("k must be at least 1"));
    }
    let r = is_g as f64 / n as f64;
    let e = k as i32 - 1;
    let scale = is_g as f64 * (d as f64).powi(e);
    let end = |lambda: f64| scale * (r + lambda * (1.0 - r)).powi(e);
    Ok((end(lambda_min).max(0.0), end(lambda_1)))
}

/// The gap amplification record, with the degree requirement and the two
/// feasibility inequalities evaluated (not asserted).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapRatio {
    pub a: f64,
    pub b: f64,
    pub eps2: f64,
    pub k: usize,
    /// `(b/a)·((b−ε₂)/(a+ε₂))^{k−1}`.
    pub ratio: f64,
    /// `16/(b−a)²`.
    pub min_d: f64,
    pub epsilon: f64,
    /// `(b+ε₂)^{k−1}` against `1/(ln(n·d^{k−1}))^{1/ε}`.
    pub feasibility_lhs: f64,
    pub feasibility_rhs: f64,
    /// `(ln n)^{1/ε}(1 + (k−1)ln d/ln n)^{1/ε}` against `(1/(b+ε₂))^{k−1}`.
    pub growth_lhs: f64,
    pub growth_rhs: f64,
}

pub fn gap_ratio(a: f64, b: f64, eps2: f64, k: usize) -> Result<f64> {
    if !(0.0 < a && a < b && b < 1.0) {
        return Err(PlgError::input(format!("need 0 < a < b < 1, got a={a}, b={b}")));
    }
    if eps2.is_nan() || eps2 < 0.0 || a + eps2 <= 0.0 || b - eps2 <= 0.0 {
        return Err(PlgError::input(format!("eps2={eps2} leaves a non-positive base")));
    }
    if k == 0 {
        return Err(PlgError::input("k must be at least 1"));
    }
    Ok(b / a * ((b - eps2) / (a + eps2)).powi(k as i32 - 1))
}

#[allow(clippy::too_many_arguments)]
pub fn gap_record(
    a: f64,
    b: f64,
    eps2: f64,
    k: usize,
    n: usize,
    d: usize,
    epsilon: f64,
) -> Result<GapRatio> {
    let ratio = gap_ratio(a, b, eps2, k)?;
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(PlgError::input(format!("epsilon must be positive, got {epsilon}")));
    }
    let e = k as i32 - 1;
    let ln_n = (n as f64).ln();
    let ln_nd = ln_n + e as f64 * (d as f64).ln();
    Ok(GapRatio {
        a,
        b,
        eps2,
        k,
        ratio,
        min_d: 16.0 / ((b - a) * (b - a)),
        epsilon,
        feasibility_lhs: (b + eps2).powi(e),
        feasibility_rhs: 1.0 / ln_nd.powf(1.0 / epsilon),
        growth_lhs: ln_n.powf(1.0 / epsilon)
            * (1.0 + e as f64 * (d as f64).ln() / ln_n).powf(1.0 / epsilon),
        growth_rhs: (1.0 / (b + eps2)).powi(e),
    })
}
