//! Simulation of the normalized discounted sum and fixed-point
//! diagnostics.
//!
//! `Ŝ_a = sqrt(1−a²) Σ_{n≥0} aⁿ Xₙ` is simulated two ways: by truncating
//! the series once the neglected normalized tail variance `a^{2N}` drops
//! below a tolerance, and by running the AR(1) recursion
//! `Y_{n+1} = a Yₙ + sqrt(1−a²) Xₙ`, whose n-step law is the n-fold
//! composition of the AR(1) step applied to the initial law.

use crate::charfn::CharFn;
use crate::distributions::Distribution;
use crate::metrics::{fourier_distance, GridSpec, MetricResult};
use crate::rng;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// How to realize draws of `Ŝ_a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    /// Truncated series, smallest weights accumulated first.
    DirectTruncation,
    /// `steps` applications of the AR(1) recursion started from a named
    /// catalog law.
    Ar1Iteration { steps: usize, initial_law: String },
}

/// Simulation parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Discount factor in [0, 1).
    pub a: f64,
    pub n_samples: usize,
    /// Bound on the neglected tail variance of `Ŝ_a`, in (0, 1).
    pub trunc_tol: f64,
    pub seed: u64,
    pub method: Method,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.a) {
            return Err(Error::InvalidDiscount { a: self.a, expected: "[0, 1)" });
        }
        if !(self.trunc_tol > 0.0 && self.trunc_tol < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "trunc_tol = {} outside (0, 1)",
                self.trunc_tol
            )));
        }
        if self.n_samples == 0 {
            return Err(Error::InvalidParameter("n_samples must be at least 1".into()));
        }
        Ok(())
    }
}

/// Smallest `N` with `a^{2N} ≤ tol`, i.e. the number of series terms whose
/// neglected normalized tail variance `Σ_{n≥N} (1−a²) a^{2n} = a^{2N}`
/// meets the tolerance. `a = 0` needs a single term; `tol ≥ 1` returns 1.
pub fn truncation_length(a: f64, tol: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::InvalidDiscount { a, expected: "[0, 1)" });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tol = {tol} must be positive")));
    }
    if a == 0.0 || tol >= 1.0 {
        return Ok(1);
    }
    let mut n = ((tol.ln() / (2.0 * a.ln())).ceil() as usize).max(1);
    // the closed form can land one off under rounding; enforce minimality
    while a.powi(2 * n as i32) > tol {
        n += 1;
    }
    while n > 1 && a.powi(2 * (n as i32 - 1)) <= tol {
        n -= 1;
    }
    Ok(n)
}

/// `n_samples` i.i.d. draws of `sqrt(1−a²) Σ_{n<N} aⁿ Xₙ` with
/// `N = truncation_length(a, trunc_tol)`.
///
/// Each draw folds its terms Horner-style from the smallest weight up
/// (`s ← s·a + X`, fused multiply-add), which keeps the floating-point
/// error bounded when `a` is near 1 and `N` is large. Deterministic for
/// fixed `(seed, n_samples)` and invariant to worker count.
pub fn simulate_discounted(f: &Distribution, cfg: &SimConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let n_terms = truncation_length(cfg.a, cfg.trunc_tol)?;
    let a = cfg.a;
    let w = (1.0 - a * a).sqrt();
    Ok(rng::blocked_samples(cfg.seed, cfg.n_samples, |rng, out| {
        for slot in out.iter_mut() {
            let mut s = 0.0_f64;
            for _ in 0..n_terms {
                s = s.mul_add(a, f.sample_one(rng));
            }
            *slot = w * s;
        }
    }))
}

/// `n_samples` independent AR(1) trajectories, each started at a fresh
/// draw of `initial` and advanced `steps` times; returns the empirical law
/// of `Y_steps`. One output draw per trajectory, so the sample is i.i.d.
pub fn ar1_iterate(
    f: &Distribution,
    initial: &Distribution,
    a: f64,
    steps: usize,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::InvalidDiscount { a, expected: "[0, 1)" });
    }
    if n_samples == 0 {
        return Err(Error::InvalidParameter("n_samples must be at least 1".into()));
    }
    let w = (1.0 - a * a).sqrt();
    Ok(rng::blocked_samples(seed, n_samples, |rng, out| {
        for slot in out.iter_mut() {
            let mut y = initial.sample_one(rng);
            for _ in 0..steps {
                y = a * y + w * f.sample_one(rng);
            }
            *slot = y;
        }
    }))
}

/// Dispatches on `cfg.method`.
pub fn simulate(f: &Distribution, cfg: &SimConfig) -> Result<Vec<f64>> {
    match &cfg.method {
        Method::DirectTruncation => simulate_discounted(f, cfg),
        Method::Ar1Iteration { steps, initial_law } => {
            cfg.validate()?;
            let initial = Distribution::from_name(initial_law)?;
            ar1_iterate(f, &initial, cfg.a, *steps, cfg.n_samples, cfg.seed)
        }
    }
}

/// `d₂` gap between a candidate fixed point and its image under one AR(1)
/// step: `d₂(F_a, C_F(sqrt(1−a²)·) F_a(a·))`. Zero for the exact law of
/// `Ŝ_a`; for the truncated product it is bounded by the truncation error,
/// which the returned error estimate reflects.
pub fn fixed_point_residual(
    fa_cf: &CharFn,
    f_cf: &CharFn,
    a: f64,
    grid: &GridSpec,
) -> Result<MetricResult> {
    let stepped = CharFn::ar1_step(f_cf, fa_cf, a)?;
    fourier_distance(fa_cf, &stepped, 2.0, grid)
}
