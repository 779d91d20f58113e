//! Evaluable characteristic functions and their algebra.
//!
//! Four kinds: analytic (from a catalog law), empirical (from samples), the
//! truncated infinite product representing the law of the normalized
//! discounted sum, and one step of the AR(1) recursion on laws,
//! `C(ξ) ↦ C_F(sqrt(1−a²) ξ) · C(aξ)`.
//!
//! Values are immutable after construction; evaluation is pure, so sharing
//! across threads needs no synchronization.

use crate::discounted::truncation_length;
use crate::distributions::Distribution;
use crate::{Error, Result};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;
use std::sync::Arc;

/// Uniform empirical-CF error constant: `error_bound = C / sqrt(n)`,
/// roughly a 3-sigma envelope for the pointwise estimator noise.
pub const EMPIRICAL_CF_ERROR_CONST: f64 = 3.0;

/// Sequential-summation chunk size for empirical evaluation; partial sums
/// are combined in chunk order so the result is thread-count invariant.
const EMPIRICAL_CHUNK: usize = 8_192;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharFnKind {
    Analytic,
    Empirical,
    DiscountedProduct,
    Ar1Step,
}

/// An evaluable characteristic function under the convention
/// `C(ξ) = E e^{−iξX}`.
#[derive(Debug, Clone)]
pub struct CharFn {
    repr: Repr,
}

#[derive(Debug, Clone)]
enum Repr {
    Analytic {
        dist: Distribution,
    },
    Empirical {
        samples: Arc<Vec<f64>>,
        restandardized: bool,
        third_moment: f64,
        error_bound: f64,
    },
    DiscountedProduct {
        base: Arc<CharFn>,
        a: f64,
        len: usize,
        tol: f64,
    },
    Ar1Step {
        base: Arc<CharFn>,
        state: Arc<CharFn>,
        a: f64,
    },
}

impl CharFn {
    /// The analytic characteristic function of a catalog law.
    pub fn analytic(dist: &Distribution) -> CharFn {
        CharFn {
            repr: Repr::Analytic { dist: dist.clone() },
        }
    }

    /// `C_Φ(ξ) = e^{−ξ²/2}`.
    pub fn standard_normal() -> CharFn {
        CharFn::analytic(&Distribution::new(crate::distributions::Family::Normal).unwrap())
    }

    /// Empirical estimator `(1/n) Σ e^{−iξ x_j}`.
    ///
    /// With `restandardize` the samples are first affinely mapped to sample
    /// mean 0 and sample variance 1, which pins the first two Taylor
    /// coefficients of the estimator and makes the near-origin error
    /// O(ξ³). The uniform error bound is
    /// [`EMPIRICAL_CF_ERROR_CONST`]`/sqrt(n)`.
    pub fn empirical(samples: &[f64], restandardize: bool) -> Result<CharFn> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        let n = samples.len() as f64;
        let owned = if restandardize {
            let mean = samples.iter().sum::<f64>() / n;
            let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
            if var <= 0.0 {
                return Err(Error::ZeroSampleVariance);
            }
            let sd = var.sqrt();
            samples.iter().map(|x| (x - mean) / sd).collect::<Vec<_>>()
        } else {
            samples.to_vec()
        };
        let third_moment = owned.iter().map(|x| x * x * x).sum::<f64>() / n;
        Ok(CharFn {
            repr: Repr::Empirical {
                samples: Arc::new(owned),
                restandardized: restandardize,
                third_moment,
                error_bound: EMPIRICAL_CF_ERROR_CONST / n.sqrt(),
            },
        })
    }

    /// Truncated product form of the cf of `Ŝ_a = sqrt(1−a²) Σ aⁿ Xₙ`:
    ///
    /// `C(ξ) = Π_{n<N} C_F(sqrt(1−a²) aⁿ ξ)`, `N = truncation_length(a, tol)`.
    ///
    /// The dropped tail has variance `a^{2N} ≤ tol`, giving the pointwise
    /// bound `|C − C_exact| ≤ a^{2N} ξ² / 2` for any mean-0 variance-1 base.
    pub fn discounted_product(base: &CharFn, a: f64, tol: f64) -> Result<CharFn> {
        if !(0.0..1.0).contains(&a) {
            return Err(Error::InvalidDiscount { a, expected: "[0, 1)" });
        }
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::InvalidParameter(format!("truncation tol = {tol} must be positive")));
        }
        let len = truncation_length(a, tol)?;
        Ok(CharFn {
            repr: Repr::DiscountedProduct {
                base: Arc::new(base.clone()),
                a,
                len,
                tol,
            },
        })
    }

    /// One step of the AR(1) recursion on laws: the cf of
    /// `a·Y + sqrt(1−a²)·X` with `Y ~ state`, `X ~ base` independent, i.e.
    /// `C(ξ) = C_base(sqrt(1−a²) ξ) · C_state(aξ)`.
    pub fn ar1_step(base: &CharFn, state: &CharFn, a: f64) -> Result<CharFn> {
        if !(0.0..1.0).contains(&a) {
            return Err(Error::InvalidDiscount { a, expected: "[0, 1)" });
        }
        Ok(CharFn {
            repr: Repr::Ar1Step {
                base: Arc::new(base.clone()),
                state: Arc::new(state.clone()),
                a,
            },
        })
    }

    pub fn kind(&self) -> CharFnKind {
        match self.repr {
            Repr::Analytic { .. } => CharFnKind::Analytic,
            Repr::Empirical { .. } => CharFnKind::Empirical,
            Repr::DiscountedProduct { .. } => CharFnKind::DiscountedProduct,
            Repr::Ar1Step { .. } => CharFnKind::Ar1Step,
        }
    }

    pub fn evaluate(&self, xi: f64) -> Complex64 {
        match &self.repr {
            Repr::Analytic { dist } => dist.cf(xi),
            Repr::Empirical { samples, .. } => {
                if xi == 0.0 {
                    return Complex64::new(1.0, 0.0);
                }
                let n = samples.len() as f64;
                let partials: Vec<(f64, f64)> = samples
                    .par_chunks(EMPIRICAL_CHUNK)
                    .map(|chunk| {
                        let mut re = 0.0;
                        let mut im = 0.0;
                        for &x in chunk {
                            let (s, c) = (xi * x).sin_cos();
                            re += c;
                            im -= s;
                        }
                        (re, im)
                    })
                    .collect();
                let (re, im) = partials
                    .iter()
                    .fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d));
                Complex64::new(re / n, im / n)
            }
            Repr::DiscountedProduct { base, a, len, .. } => {
                let mut u = (1.0 - a * a).sqrt() * xi;
                let mut prod = Complex64::new(1.0, 0.0);
                for _ in 0..*len {
                    prod *= base.evaluate(u);
                    u *= a;
                }
                prod
            }
            Repr::Ar1Step { base, state, a } => {
                let w = (1.0 - a * a).sqrt();
                base.evaluate(w * xi) * state.evaluate(a * xi)
            }
        }
    }

    /// Pointwise evaluation-error estimate at `ξ` (truncation or
    /// statistical); 0 for analytic inputs. Errors compose additively
    /// because every factor has modulus at most 1.
    pub fn error_bound(&self, xi: f64) -> f64 {
        match &self.repr {
            Repr::Analytic { .. } => 0.0,
            Repr::Empirical { error_bound, .. } => *error_bound,
            Repr::DiscountedProduct { base, a, len, .. } => {
                let trunc = 0.5 * a.powi(2 * *len as i32) * xi * xi;
                let mut inherited = 0.0;
                if base.kind() != CharFnKind::Analytic {
                    let mut u = (1.0 - a * a).sqrt() * xi;
                    for _ in 0..*len {
                        inherited += base.error_bound(u);
                        u *= a;
                    }
                }
                trunc + inherited
            }
            Repr::Ar1Step { base, state, a } => {
                let w = (1.0 - a * a).sqrt();
                base.error_bound(w * xi) + state.error_bound(a * xi)
            }
        }
    }

    /// Signed third moment of the underlying law, when known. Needed for
    /// the analytic `ξ → 0` limit of the order-3 Fourier distance.
    pub fn third_moment(&self) -> Option<f64> {
        match &self.repr {
            Repr::Analytic { dist } => dist.third_moment(),
            Repr::Empirical { third_moment, .. } => Some(*third_moment),
            Repr::DiscountedProduct { base, a, len, .. } => {
                // Σ (w aⁿ)³ m₃ = w³ (1 − a^{3N})/(1 − a³) m₃
                let w3 = (1.0 - a * a).sqrt().powi(3);
                let geom = if *a == 0.0 {
                    1.0
                } else {
                    (1.0 - a.powi(3 * *len as i32)) / (1.0 - a * a * a)
                };
                base.third_moment().map(|m3| m3 * w3 * geom)
            }
            Repr::Ar1Step { base, state, a } => {
                let w3 = (1.0 - a * a).sqrt().powi(3);
                match (base.third_moment(), state.third_moment()) {
                    (Some(mb), Some(ms)) => Some(mb * w3 + ms * a.powi(3)),
                    _ => None,
                }
            }
        }
    }

    /// Provenance record for JSON reports.
    pub fn describe(&self) -> serde_json::Value {
        match &self.repr {
            Repr::Analytic { dist } => json!({ "kind": "analytic", "source": dist.name() }),
            Repr::Empirical {
                samples,
                restandardized,
                error_bound,
                ..
            } => json!({
                "kind": "empirical",
                "n_samples": samples.len(),
                "restandardized": restandardized,
                "error_bound": error_bound,
            }),
            Repr::DiscountedProduct { base, a, len, tol } => json!({
                "kind": "discounted_product",
                "a": a,
                "truncation_len": len,
                "tol": tol,
                "base": base.describe(),
            }),
            Repr::Ar1Step { base, state, a } => json!({
                "kind": "ar1_step",
                "a": a,
                "base": base.describe(),
                "state": state.describe(),
            }),
        }
    }
}
