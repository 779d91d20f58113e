//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line with its measured quantities and wall time (visible with
//! `--nocapture`).
//!
//! The tests serialize on a shared lock so the per-criterion runtime
//! budgets are measured without interference.

use discounted_clt::bounds::{
    envelope_distance_bound, envelope_sup, fixed_point_gap_bound, kolmogorov_from_d2, rate_bound,
};
use discounted_clt::charfn::CharFn;
use discounted_clt::discounted::{fixed_point_residual, simulate_discounted, Method, SimConfig};
use discounted_clt::distributions::{Distribution, Family};
use discounted_clt::metrics::{
    dkw_radius, fourier_distance, kolmogorov_distance, refine_sup, GridSpec,
};
use discounted_clt::special::normal_cdf;
use rand::Rng;
use std::sync::Mutex;
use std::time::Instant;

static LOCK: Mutex<()> = Mutex::new(());

struct Criterion {
    name: &'static str,
    budget_secs: f64,
    start: Instant,
    _guard: std::sync::MutexGuard<'static, ()>,
}

impl Criterion {
    fn begin(name: &'static str, budget_secs: f64) -> Self {
        let guard = LOCK.lock().unwrap_or_else(|p| p.into_inner());
        Criterion {
            name,
            budget_secs,
            start: Instant::now(),
            _guard: guard,
        }
    }

    fn finish(self, detail: String) {
        let elapsed = self.start.elapsed().as_secs_f64();
        println!("PASS  {} — {} [{elapsed:.2}s / {}s]", self.name, detail, self.budget_secs);
        assert!(
            elapsed <= self.budget_secs,
            "{} exceeded its runtime budget: {elapsed:.2}s > {}s",
            self.name,
            self.budget_secs
        );
    }
}

fn cf(f: Family) -> CharFn {
    CharFn::analytic(&Distribution::new(f).unwrap())
}

fn direct(a: f64, n: usize, tol: f64, seed: u64) -> SimConfig {
    SimConfig {
        a,
        n_samples: n,
        trunc_tol: tol,
        seed,
        method: Method::DirectTruncation,
    }
}

#[test]
fn a01_gaussian_null_case() {
    let c = Criterion::begin("gaussian null: d2(F_a, Phi) <= 1e-8 for normal base", 10.0);
    let grid = GridSpec::default();
    let phi = CharFn::standard_normal();
    let mut worst = 0.0_f64;
    for a in [0.5, 0.9, 0.99] {
        let fa = CharFn::discounted_product(&phi, a, 1e-12).unwrap();
        let d = fourier_distance(&fa, &phi, 2.0, &grid).unwrap();
        assert!(d.value <= 1e-8, "a={a}: d2 = {}", d.value);
        worst = worst.max(d.value);
    }
    c.finish(format!("max d2 = {worst:.2e} (limit 1e-8)"));
}

#[test]
fn a02_rate_chain_rademacher_order_three() {
    let c = Criterion::begin("rate chain: d2 <= envelope bound <= closed-form rate", 120.0);
    let grid = GridSpec::default();
    let f = cf(Family::Rademacher);
    let phi = CharFn::standard_normal();
    let d3 = fourier_distance(&f, &phi, 3.0, &grid).unwrap();

    let mut d2_by_a = Vec::new();
    for a in [0.9, 0.99, 0.999] {
        let fa = CharFn::discounted_product(&f, a, 1e-12).unwrap();
        let d2 = fourier_distance(&fa, &phi, 2.0, &grid).unwrap();
        let l2 = envelope_distance_bound(&f, a, &grid).unwrap();
        let rate = rate_bound(a, 3.0, d3.value).unwrap();
        let eps = d2.error_estimate + d3.error_estimate;
        assert!(
            d2.value <= l2 + eps,
            "a={a}: d2 {} > envelope bound {l2} + {eps}",
            d2.value
        );
        assert!(l2 <= rate + eps, "a={a}: envelope bound {l2} > rate {rate} + {eps}");
        d2_by_a.push(d2.value);
    }

    // the closed-form rate scales like (1-a^2)^{1/2}; the measured distance
    // must decay at least that fast (faster is consistent with an upper
    // bound, and symmetric laws do decay faster)
    let measured_ratio = d2_by_a[1] / d2_by_a[0];
    let rate_ratio = ((1.0 - 0.99_f64 * 0.99) / (1.0 - 0.9_f64 * 0.9)).sqrt();
    assert!(
        measured_ratio <= 2.0 * rate_ratio,
        "decay ratio {measured_ratio} slower than 2x rate ratio {rate_ratio}"
    );
    c.finish(format!(
        "d2 = [{:.3e}, {:.3e}, {:.3e}], decay {measured_ratio:.3} vs rate {rate_ratio:.3}",
        d2_by_a[0], d2_by_a[1], d2_by_a[2]
    ));
}

#[test]
fn a03_contraction_of_ar1_step() {
    let c = Criterion::begin("contraction: d2(T_a G, T_a H) <= a^2 d2(G, H) + 2eps", 60.0);
    let grid = GridSpec::default();
    let laws = [Family::Normal, Family::Rademacher, Family::Uniform, Family::Exponential];
    let mut rng = discounted_clt::rng::stream_rng(4242, 0);
    let mut checked = 0;
    let mut min_slack = f64::INFINITY;
    for _ in 0..20 {
        let f = cf(laws[rng.gen_range(0..4)].clone());
        let gi = rng.gen_range(0..4);
        let mut hi = rng.gen_range(0..4);
        while hi == gi {
            hi = rng.gen_range(0..4);
        }
        let g = cf(laws[gi].clone());
        let h = cf(laws[hi].clone());
        let base = fourier_distance(&g, &h, 2.0, &grid).unwrap();
        for a in [0.3, 0.6, 0.9] {
            let tg = CharFn::ar1_step(&f, &g, a).unwrap();
            let th = CharFn::ar1_step(&f, &h, a).unwrap();
            let lhs = fourier_distance(&tg, &th, 2.0, &grid).unwrap();
            let eps = lhs.error_estimate.max(base.error_estimate);
            let slack = a * a * base.value + 2.0 * eps - lhs.value;
            assert!(
                slack >= 0.0,
                "pair ({}, {}) base {} a={a}: {} > {}",
                gi,
                hi,
                base.value,
                lhs.value,
                a * a * base.value + 2.0 * eps
            );
            min_slack = min_slack.min(slack);
            checked += 1;
        }
    }
    c.finish(format!("{checked} checks, min slack {min_slack:.2e}"));
}

#[test]
fn a04_fixed_point_residual() {
    let c = Criterion::begin("fixed point: residual within 10x truncation estimate", 30.0);
    let grid = GridSpec::default();
    let mut worst_ratio = 0.0_f64;
    for fam in [Family::Rademacher, Family::Exponential] {
        for a in [0.5, 0.9] {
            let f = cf(fam.clone());
            let fa = CharFn::discounted_product(&f, a, 1e-7).unwrap();
            let r = fixed_point_residual(&fa, &f, a, &grid).unwrap();
            assert!(
                r.value <= 10.0 * r.error_estimate,
                "{fam:?} a={a}: residual {} > 10 x {}",
                r.value,
                r.error_estimate
            );
            worst_ratio = worst_ratio.max(r.value / r.error_estimate);
        }
    }
    c.finish(format!("max residual/estimate = {worst_ratio:.2}"));
}

#[test]
fn a05_envelope_equals_gap_bound_at_phi() {
    let c = Criterion::begin("identity: envelope bound == gap bound at G = Phi (1e-6 rel)", 60.0);
    let grid = GridSpec::default();
    let phi = CharFn::standard_normal();
    let laws = [
        Family::Rademacher,
        Family::Uniform,
        Family::Exponential,
        Family::Bernoulli { p: 0.3 },
        Family::StudentT { nu: 2.5 },
    ];
    let mut worst = 0.0_f64;
    let mut combos = 0;
    for fam in laws {
        for a in [0.3, 0.9] {
            let f = cf(fam.clone());
            let l2 = envelope_distance_bound(&f, a, &grid).unwrap();
            let gap = fixed_point_gap_bound(&phi, &f, a, &grid).unwrap();
            let rel = (l2 - gap).abs() / l2.max(gap);
            assert!(rel <= 1e-6, "{fam:?} a={a}: {l2} vs {gap} (rel {rel})");
            worst = worst.max(rel);
            combos += 1;
        }
    }
    c.finish(format!("{combos} combinations, max rel gap {worst:.2e}"));
}

#[test]
fn a06_envelope_closed_form_random() {
    let c = Criterion::begin("envelope supremum closed form (20 random (a, s))", 5.0);
    let mut rng = discounted_clt::rng::stream_rng(606, 0);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let a = rng.gen_range(0.02..0.98);
        let s = rng.gen_range(2.02..=3.0);
        let (w_star, closed) = envelope_sup(a, s).unwrap();
        let kernel =
            move |w: f64| (-(a * w) * (a * w) / (2.0 * (1.0 - a * a))).exp() * w.powf(s - 2.0);
        let (w_num, numeric) = refine_sup(kernel, 1e-3, 100.0).unwrap();
        let rel = (numeric - closed).abs() / closed;
        assert!(rel <= 1e-6, "a={a} s={s}: closed {closed} vs numeric {numeric}");
        assert!((w_num - w_star).abs() <= 1e-3 * w_star.max(1.0));
        worst = worst.max(rel);
    }
    c.finish(format!("max rel gap {worst:.2e}"));
}

#[test]
fn a07_convergence_without_third_moments() {
    let c = Criterion::begin("heavy tails: student_t(2.5) d2 decreasing, halved by a = 0.999", 120.0);
    let grid = GridSpec::default();
    let t = cf(Family::StudentT { nu: 2.5 });
    let phi = CharFn::standard_normal();
    // Gerber's route is unavailable here
    let rho3 = Distribution::new(Family::StudentT { nu: 2.5 }).unwrap().abs_moment(3.0).unwrap();
    assert!(rho3.is_infinite());

    let mut values = Vec::new();
    for a in [0.9, 0.99, 0.999] {
        let fa = CharFn::discounted_product(&t, a, 1e-12).unwrap();
        values.push(fourier_distance(&fa, &phi, 2.0, &grid).unwrap().value);
    }
    assert!(values[1] < values[0] && values[2] < values[1], "not decreasing: {values:?}");
    assert!(
        values[2] <= 0.5 * values[0],
        "d2(0.999) = {} not below half of d2(0.9) = {}",
        values[2],
        values[0]
    );
    c.finish(format!("d2 = [{:.4}, {:.4}, {:.4}]", values[0], values[1], values[2]));
}

#[test]
fn a08_kolmogorov_comparisons() {
    let c = Criterion::begin("Kolmogorov: measured <= Gerber 0.54 and <= d2 conversion", 60.0);
    let f = Distribution::new(Family::Rademacher).unwrap();
    let a = 0.99;
    let n = 1_000_000;
    let samples = simulate_discounted(&f, &direct(a, n, 1e-10, 2024)).unwrap();
    let measured = kolmogorov_distance(&samples, normal_cdf).unwrap();

    // Gerber with rho3 = 1, C = 5.4: 5.4 sqrt(0.01) = 0.54
    assert!(measured <= 0.54, "measured {measured} > 0.54");

    let grid = GridSpec::default();
    let fa = CharFn::discounted_product(&CharFn::analytic(&f), a, 1e-10).unwrap();
    let d2 = fourier_distance(&fa, &CharFn::standard_normal(), 2.0, &grid).unwrap();
    let conversion = kolmogorov_from_d2(d2.value).unwrap();
    let budget = conversion + 3.0 * dkw_radius(n, 0.01);
    assert!(measured <= budget, "measured {measured} > {budget}");
    c.finish(format!(
        "measured {measured:.2e} <= 0.54, <= conversion {conversion:.3} + 3 DKW"
    ));
}

#[test]
fn a09_two_oracle_agreement() {
    let c = Criterion::begin("two oracles: empirical CF vs product CF within 0.01", 60.0);
    let f = Distribution::new(Family::Rademacher).unwrap();
    let a = 0.9;
    let n = 1_000_000;
    let samples = simulate_discounted(&f, &direct(a, n, 1e-10, 909)).unwrap();
    let emp = CharFn::empirical(&samples, false).unwrap();
    let product = CharFn::discounted_product(&CharFn::analytic(&f), a, 1e-10).unwrap();
    let mut worst = 0.0_f64;
    for xi in GridSpec::default().positive_grid() {
        worst = worst.max((emp.evaluate(xi) - product.evaluate(xi)).norm());
    }
    assert!(worst <= 0.01, "sup gap {worst} > 0.01");
    c.finish(format!("sup gap {worst:.2e} (limit 0.01)"));
}

#[test]
fn a10_sweep_determinism() {
    let c = Criterion::begin("determinism: sweep bytes identical across reruns and --jobs", 120.0);
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("report.csv");
    let json = dir.path().join("report.json");
    let bin = env!("CARGO_BIN_EXE_dclt");

    let run = |jobs: &str| {
        let out = std::process::Command::new(bin)
            .args([
                "sweep",
                "--dist",
                "rademacher",
                "--s",
                "3",
                "--a-values",
                "0.3,0.6,0.9",
                "--n-samples",
                "20000",
                "--trunc-tol",
                "1e-8",
                "--seed",
                "7",
                "--csv",
                csv.to_str().unwrap(),
                "--json",
                json.to_str().unwrap(),
                "--jobs",
                jobs,
            ])
            .output()
            .expect("sweep run");
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
        (std::fs::read(&csv).unwrap(), std::fs::read(&json).unwrap())
    };

    let (csv1, json1) = run("1");
    let (csv2, json2) = run("1");
    assert_eq!(csv1, csv2, "rerun changed the CSV bytes");
    assert_eq!(json1, json2, "rerun changed the JSON bytes");
    let (csv4, json4) = run("4");
    assert_eq!(csv1, csv4, "--jobs changed the CSV bytes");
    assert_eq!(json1, json4, "--jobs changed the JSON bytes");
    c.finish(format!("{} CSV bytes, {} JSON bytes stable", csv1.len(), json1.len()));
}
