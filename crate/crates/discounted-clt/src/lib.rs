//! Fourier-based probability metrics and discounted sums.
//!
//! This crate studies the normalized discounted sum
//! `Ŝ_a = sqrt(1 - a²) · Σ aⁿ Xₙ` of i.i.d. standardized random variables
//! and its convergence to the standard normal law as the discount factor
//! `a` approaches 1. It provides:
//!
//! - a catalog of standardized probability laws with analytic
//!   characteristic functions, exact samplers and absolute moments
//!   ([`distributions`]);
//! - an algebra of evaluable characteristic functions: analytic, empirical,
//!   truncated discounted products and AR(1) steps ([`charfn`]);
//! - the Fourier distance `d_s(G, H) = sup |C_G(ξ) − C_H(ξ)| / |ξ|^s` and
//!   the Kolmogorov distance ([`metrics`]);
//! - Monte Carlo simulation of `Ŝ_a` by certified truncation and by the
//!   AR(1) recursion `Y_{n+1} = a Yₙ + sqrt(1 - a²) Xₙ` ([`discounted`]);
//! - closed-form and numerical convergence-rate bounds, including the
//!   Gaussian-envelope bound, the `[(s−2)(1−a²)/(e a²)]^{(s−2)/2}` rate,
//!   Gerber's Kolmogorov bound and the d₂→Kolmogorov conversion
//!   ([`bounds`]);
//! - a sweep harness producing CSV/JSON bound reports ([`sweep`]) and an
//!   executable self-check suite ([`verify`]).
//!
//! The characteristic function convention is `C_G(ξ) = E e^{−iξX}`
//! throughout.
//!
//! See the `examples/` directory for one runnable example per capability,
//! and the `dclt` binary for the command-line front end.

pub mod bounds;
pub mod charfn;
pub mod discounted;
pub mod distributions;
pub mod metrics;
pub mod rng;
pub mod special;
pub mod sweep;
pub mod verify;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("discount factor a = {a} outside {expected}")]
    InvalidDiscount { a: f64, expected: &'static str },

    #[error("metric order s = {s} outside {expected}")]
    InvalidOrder { s: f64, expected: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown distribution {0:?}")]
    UnknownDistribution(String),

    #[error("empty sample set")]
    EmptySamples,

    #[error("zero sample variance, cannot restandardize")]
    ZeroSampleVariance,

    #[error("required moment is not finite: {0}")]
    InfiniteMoment(String),

    #[error("invalid bracket [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("empty report")]
    EmptyReport,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use charfn::CharFn;
pub use distributions::{Distribution, Family};
pub use metrics::{GridSpec, MetricResult};
pub use sweep::{BoundReport, SweepConfig};
