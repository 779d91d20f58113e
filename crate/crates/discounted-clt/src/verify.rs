//! Executable self-checks for the core identities and bounds.
//!
//! Each check is a fast, deterministic verification of one structural
//! property; the `dclt verify` subcommand runs the whole list and exits
//! nonzero if any fails. The acceptance test suite runs the same
//! properties at full scale.

use crate::bounds::{
    envelope_distance_bound, envelope_sup, fixed_point_gap_bound, gerber_bound,
    kolmogorov_from_d2, rate_bound,
};
use crate::charfn::CharFn;
use crate::discounted::fixed_point_residual;
use crate::distributions::{Distribution, Family};
use crate::metrics::{fourier_distance, refine_sup, GridSpec};
use rand::Rng;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> CheckResult {
    CheckResult { name, pass, detail }
}

fn cf(f: Family) -> CharFn {
    CharFn::analytic(&Distribution::new(f).unwrap())
}

fn gaussian_null() -> CheckResult {
    let grid = GridSpec::default();
    let phi = CharFn::standard_normal();
    let mut worst = 0.0_f64;
    for a in [0.5, 0.9] {
        let fa = CharFn::discounted_product(&phi, a, 1e-12).unwrap();
        let d = fourier_distance(&fa, &phi, 2.0, &grid).unwrap();
        worst = worst.max(d.value);
    }
    check(
        "gaussian null: d2(F_a, Phi) vanishes for normal base",
        worst <= 1e-8,
        format!("max d2 = {worst:.3e} (limit 1e-8)"),
    )
}

fn contraction() -> CheckResult {
    let grid = GridSpec::default();
    let laws = [Family::Normal, Family::Rademacher, Family::Uniform, Family::Exponential];
    let mut rng = crate::rng::stream_rng(99, 0);
    let mut worst_slack = f64::INFINITY;
    let mut pass = true;
    for _ in 0..6 {
        let f = cf(laws[rng.gen_range(0..4)].clone());
        let gi = rng.gen_range(0..4);
        let mut hi = rng.gen_range(0..4);
        while hi == gi {
            hi = rng.gen_range(0..4);
        }
        let (g, h) = (cf(laws[gi].clone()), cf(laws[hi].clone()));
        let a = [0.3, 0.6, 0.9][rng.gen_range(0..3)];
        let tg = CharFn::ar1_step(&f, &g, a).unwrap();
        let th = CharFn::ar1_step(&f, &h, a).unwrap();
        let lhs = fourier_distance(&tg, &th, 2.0, &grid).unwrap();
        let rhs = fourier_distance(&g, &h, 2.0, &grid).unwrap();
        let eps = lhs.error_estimate.max(rhs.error_estimate);
        let slack = a * a * rhs.value + 2.0 * eps - lhs.value;
        pass &= slack >= 0.0;
        worst_slack = worst_slack.min(slack);
    }
    check(
        "contraction: d2(T_a G, T_a H) <= a^2 d2(G, H)",
        pass,
        format!("min slack = {worst_slack:.3e}"),
    )
}

fn fixed_point() -> CheckResult {
    let grid = GridSpec::default();
    let mut pass = true;
    let mut detail = String::new();
    for (fam, a) in [(Family::Rademacher, 0.5), (Family::Exponential, 0.9)] {
        let f = cf(fam);
        let fa = CharFn::discounted_product(&f, a, 1e-7).unwrap();
        let r = fixed_point_residual(&fa, &f, a, &grid).unwrap();
        pass &= r.value <= 10.0 * r.error_estimate;
        detail = format!("residual {:.3e} vs 10x estimate {:.3e}", r.value, 10.0 * r.error_estimate);
    }
    check("fixed point: d2(F_a, T_a F_a) within truncation error", pass, detail)
}

fn envelope_closed_form() -> CheckResult {
    let mut rng = crate::rng::stream_rng(7, 1);
    let mut worst = 0.0_f64;
    for _ in 0..5 {
        let a = rng.gen_range(0.05..0.97);
        let s = rng.gen_range(2.05..=3.0);
        let (_, closed) = envelope_sup(a, s).unwrap();
        let kernel =
            move |w: f64| (-(a * w) * (a * w) / (2.0 * (1.0 - a * a))).exp() * w.powf(s - 2.0);
        let (_, numeric) = refine_sup(kernel, 1e-3, 100.0).unwrap();
        worst = worst.max((numeric - closed).abs() / closed);
    }
    check(
        "envelope supremum: closed form matches maximization",
        worst <= 1e-6,
        format!("max rel gap = {worst:.3e}"),
    )
}

fn envelope_gap_identity() -> CheckResult {
    let grid = GridSpec::default();
    let phi = CharFn::standard_normal();
    let mut worst = 0.0_f64;
    for (fam, a) in [(Family::Rademacher, 0.6), (Family::Uniform, 0.9), (Family::Exponential, 0.3)] {
        let f = cf(fam);
        let l2 = envelope_distance_bound(&f, a, &grid).unwrap();
        let gap = fixed_point_gap_bound(&phi, &f, a, &grid).unwrap();
        worst = worst.max((l2 - gap).abs() / l2.max(gap));
    }
    check(
        "identity: envelope bound equals gap bound at G = Phi",
        worst <= 1e-6,
        format!("max rel gap = {worst:.3e}"),
    )
}

fn ordering_chain() -> CheckResult {
    let grid = GridSpec::default();
    let phi = CharFn::standard_normal();
    let f = cf(Family::Rademacher);
    let d3 = fourier_distance(&f, &phi, 3.0, &grid).unwrap();
    let a = 0.9;
    let fa = CharFn::discounted_product(&f, a, 1e-10).unwrap();
    let d2 = fourier_distance(&fa, &phi, 2.0, &grid).unwrap();
    let l2 = envelope_distance_bound(&f, a, &grid).unwrap();
    let rb = rate_bound(a, 3.0, d3.value).unwrap();
    let eps = d2.error_estimate + d3.error_estimate;
    let pass = d2.value <= l2 + eps && l2 <= rb + eps;
    check(
        "ordering: d2 <= envelope bound <= rate bound",
        pass,
        format!("{:.4e} <= {:.4e} <= {:.4e}", d2.value, l2, rb),
    )
}

fn kolmogorov_constants() -> CheckResult {
    let g = gerber_bound(0.99, 1.0).unwrap();
    let k = kolmogorov_from_d2(0.001).unwrap();
    let pass = (g - 0.54).abs() < 1e-12 && (k - 0.5005247369446697).abs() < 1e-12;
    check(
        "constants: Gerber 5.4 rho3 sqrt(1-a) and 3*12^(2/3)/pi d2^(1/3)",
        pass,
        format!("gerber(0.99, 1) = {g}, conv(0.001) = {k}"),
    )
}

/// Runs every check in order.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        gaussian_null(),
        contraction(),
        fixed_point(),
        envelope_closed_form(),
        envelope_gap_identity(),
        ordering_chain(),
        kolmogorov_constants(),
    ]
}
