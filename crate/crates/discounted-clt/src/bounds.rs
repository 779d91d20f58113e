//! Quantitative convergence bounds for `d₂(F_a, Φ)` and the Kolmogorov
//! distance.
//!
//! The chain, for a standardized base law `F` with finite s-moment,
//! `s ∈ (2, 3]`:
//!
//! ```text
//! d₂(F_a, Φ) ≤ sup_w e^{−(aw)²/(2(1−a²))} |C_F(w) − C_Φ(w)| / w²
//!            ≤ [(s−2)(1−a²)/(e a²)]^{(s−2)/2} · d_s(F, Φ)
//! ```
//!
//! where the middle term is the Gaussian-envelope bound (computed
//! numerically here) and the right factor is the closed-form supremum of
//! the envelope kernel `e^{−(aw)²/(2(1−a²))} |w|^{s−2}`. Alongside:
//! Gerber's Kolmogorov bound `5.4 ρ₃ (1−a)^{1/2}` and the conversion
//! `sup|F_a − Φ| ≤ (3·12^{2/3}/π) d₂^{1/3}`.

use crate::charfn::CharFn;
use crate::metrics::{fourier_distance, sup_scan, GridSpec};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{E, PI};

/// Constant in Gerber's Kolmogorov bound.
pub const GERBER_C: f64 = 5.4;

/// Closed-form supremum of the envelope kernel
/// `e^{−(aw)²/(2(1−a²))} |w|^{s−2}` over `w ≠ 0`.
///
/// Attained at `w* = ±sqrt((s−2)(1−a²))/a` with value
/// `[(s−2)(1−a²)/(e a²)]^{(s−2)/2}`; for `s = 2` the kernel is the plain
/// Gaussian envelope whose supremum 1 is approached as `w → 0` (the
/// returned maximizer is the 0 marker).
pub fn envelope_sup(a: f64, s: f64) -> Result<(f64, f64)> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidDiscount { a, expected: "(0, 1)" });
    }
    if !(2.0..=3.0).contains(&s) {
        return Err(Error::InvalidOrder { s, expected: "[2, 3]" });
    }
    if s == 2.0 {
        return Ok((0.0, 1.0));
    }
    let one_minus_a2 = 1.0 - a * a;
    let w_star = ((s - 2.0) * one_minus_a2).sqrt() / a;
    let value = ((s - 2.0) * one_minus_a2 / (E * a * a)).powf(0.5 * (s - 2.0));
    Ok((w_star, value))
}

/// Convergence-rate bound `[(s−2)(1−a²)/(e a²)]^{(s−2)/2} · d_s(F, Φ)`
/// on `d₂(F_a, Φ)`, valid for `F` with finite s-moment, `s ∈ (2, 3]`.
pub fn rate_bound(a: f64, s: f64, ds_f_phi: f64) -> Result<f64> {
    if !(s > 2.0 && s <= 3.0) {
        return Err(Error::InvalidOrder { s, expected: "(2, 3]" });
    }
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidDiscount { a, expected: "(0, 1)" });
    }
    if !(ds_f_phi >= 0.0) {
        return Err(Error::InvalidParameter(format!("d_s = {ds_f_phi} must be nonnegative")));
    }
    let (_, env) = envelope_sup(a, s)?;
    Ok(env * ds_f_phi)
}

/// Numerically computed Gaussian-envelope bound on `d₂(F_a, Φ)`:
/// `sup_w e^{−(aw)²/(2(1−a²))} |C_F(w) − C_Φ(w)| / w²`.
///
/// Equals `d₂(Φ, T_a[Φ])/(1−a²)` by the substitution
/// `w = sqrt(1−a²) ξ` — see [`fixed_point_gap_bound`] with G = Φ. At
/// `a = 0` the envelope is identically 1 and the bound reduces to
/// `d₂(F, Φ)`.
pub fn envelope_distance_bound(f_cf: &CharFn, a: f64, grid: &GridSpec) -> Result<f64> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::InvalidDiscount { a, expected: "[0, 1)" });
    }
    grid.validate()?;
    let gauss_scale = if a == 0.0 {
        0.0
    } else {
        a * a / (2.0 * (1.0 - a * a))
    };
    let ratio = |w: f64| {
        let num = (f_cf.evaluate(w) - Complex64::new((-0.5 * w * w).exp(), 0.0)).norm();
        (-gauss_scale * w * w).exp() * num / (w * w)
    };
    let cutoff = |w: f64| 2.0 / (w * w);
    Ok(sup_scan(&ratio, grid, Some(&cutoff)).value)
}

/// A-priori fixed-point gap bound on `d₂(G, F_a)`:
/// `d₂(G, T_a[G]) / (1−a²)` where `T_a[G]` is one AR(1) step of `G`
/// against the base law `F`.
pub fn fixed_point_gap_bound(
    g_cf: &CharFn,
    f_cf: &CharFn,
    a: f64,
    grid: &GridSpec,
) -> Result<f64> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::InvalidDiscount { a, expected: "[0, 1)" });
    }
    let stepped = CharFn::ar1_step(f_cf, g_cf, a)?;
    let d = fourier_distance(g_cf, &stepped, 2.0, grid)?;
    Ok(d.value / (1.0 - a * a))
}

/// Gerber's Kolmogorov bound `5.4 · ρ₃ · (1−a)^{1/2}` with
/// `ρ₃ = E|X−μ|³/σ³`. Unavailable when the third absolute moment
/// diverges — exactly the territory where only the Fourier-metric route
/// applies.
pub fn gerber_bound(a: f64, rho3: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidDiscount { a, expected: "(0, 1)" });
    }
    if !rho3.is_finite() || rho3 < 0.0 {
        return Err(Error::InfiniteMoment(format!(
            "Gerber bound needs a finite third absolute moment, got {rho3}"
        )));
    }
    Ok(GERBER_C * rho3 * (1.0 - a).sqrt())
}

/// Kolmogorov distance from the order-2 Fourier distance:
/// `sup_x |F_a(x) − Φ(x)| ≤ (3·12^{2/3}/π) · d₂^{1/3}` (smoothing
/// inequality optimized over the cutoff).
pub fn kolmogorov_from_d2(d2: f64) -> Result<f64> {
    if !(d2 >= 0.0) {
        return Err(Error::InvalidParameter(format!("d2 = {d2} must be nonnegative")));
    }
    Ok(3.0 * 12.0_f64.powf(2.0 / 3.0) / PI * d2.powf(1.0 / 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{Distribution, Family};
    use crate::metrics::refine_sup;

    fn cf(f: Family) -> CharFn {
        CharFn::analytic(&Distribution::new(f).unwrap())
    }

    #[test]
    fn envelope_sup_reference_values() {
        let (w, v) = envelope_sup(0.6, 3.0).unwrap();
        assert!((w - 4.0 / 3.0).abs() < 1e-12);
        assert!((v - 0.8087075462835113).abs() < 1e-12);

        let (w, v) = envelope_sup(0.37, 2.0).unwrap();
        assert_eq!(w, 0.0);
        assert_eq!(v, 1.0);

        let (_, v) = envelope_sup(0.9, 2.5).unwrap();
        assert!((v - 0.4557598107655298).abs() < 1e-12);
    }

    #[test]
    fn envelope_sup_agrees_with_numerical_maximization() {
        for (a, s) in [(0.3, 2.7), (0.6, 3.0), (0.9, 2.5), (0.95, 2.1)] {
            let (w_star, value) = envelope_sup(a, s).unwrap();
            let kernel = move |w: f64| {
                (-(a * w) * (a * w) / (2.0 * (1.0 - a * a))).exp() * w.powf(s - 2.0)
            };
            let (w_num, v_num) = refine_sup(kernel, 1e-3, 100.0).unwrap();
            assert!(
                (v_num - value).abs() <= 1e-6 * value,
                "a={a} s={s}: {v_num} vs {value}"
            );
            assert!((w_num - w_star).abs() <= 1e-3 * w_star.max(1.0));
        }
    }

    #[test]
    fn rate_bound_reference_and_limits() {
        // √(0.0199/(e·0.9801)) · 0.0753
        let v = rate_bound(0.99, 3.0, 0.0753).unwrap();
        assert!((v - 0.006507873145196401).abs() < 1e-12);

        // exponent → 0 as s → 2+, so the bound tends to d_s itself
        let v = rate_bound(0.5, 2.0 + 1e-9, 1.7).unwrap();
        assert!((v - 1.7).abs() < 1e-6);

        // (1−a²)^{1/4} vanishing at s = 2.5
        let v = rate_bound(0.9999, 2.5, 1.0).unwrap();
        assert!(v < 0.1 && v > 0.0);

        assert!(rate_bound(0.9, 2.0, 1.0).is_err());
        assert!(rate_bound(0.9, 3.2, 1.0).is_err());
        assert!(rate_bound(0.0, 2.5, 1.0).is_err());
        assert!(rate_bound(0.9, 2.5, -1.0).is_err());
    }

    #[test]
    fn rate_bound_decreases_in_a() {
        let mut prev = f64::INFINITY;
        for a in [0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 0.999] {
            let v = rate_bound(a, 2.5, 1.0).unwrap();
            assert!(v < prev, "a={a}: {v} not < {prev}");
            prev = v;
        }
    }

    #[test]
    fn envelope_distance_bound_cases() {
        let grid = GridSpec::default();
        // normal base: the numerator vanishes identically
        assert_eq!(envelope_distance_bound(&CharFn::standard_normal(), 0.9, &grid).unwrap(), 0.0);

        // a = 0 reduces to d₂(F, Φ); rademacher reference 0.13996512045
        let r = cf(Family::Rademacher);
        let v0 = envelope_distance_bound(&r, 0.0, &grid).unwrap();
        assert!((v0 - 0.1399651204502759).abs() < 1e-6, "{v0}");
        let d2 = fourier_distance(&r, &CharFn::standard_normal(), 2.0, &grid).unwrap();
        assert!((v0 - d2.value).abs() < 1e-9);

        // ordering against the closed-form rate bound at s = 3
        let d3 = fourier_distance(&r, &CharFn::standard_normal(), 3.0, &grid).unwrap();
        let l2 = envelope_distance_bound(&r, 0.99, &grid).unwrap();
        let rb = rate_bound(0.99, 3.0, d3.value).unwrap();
        assert!(l2 > 0.0);
        assert!(l2 <= rb + 1e-9, "{l2} vs {rb}");
        assert!((rb - 0.006508).abs() < 1e-4);
    }

    #[test]
    fn gap_bound_with_standard_normal_matches_envelope_bound() {
        let grid = GridSpec::default();
        let phi = CharFn::standard_normal();
        for (fam, a) in [(Family::Rademacher, 0.6), (Family::Exponential, 0.9)] {
            let f = cf(fam);
            let lhs = envelope_distance_bound(&f, a, &grid).unwrap();
            let rhs = fixed_point_gap_bound(&phi, &f, a, &grid).unwrap();
            assert!(
                (lhs - rhs).abs() <= 1e-6 * lhs.max(rhs),
                "a={a}: {lhs} vs {rhs}"
            );
        }
        // normal base: Φ is the fixed point, gap 0
        let v = fixed_point_gap_bound(&phi, &phi, 0.5, &grid).unwrap();
        assert!(v <= 1e-9);
    }

    #[test]
    fn gap_bound_dominates_distance_to_limit_law() {
        let grid = GridSpec::default();
        let f = cf(Family::Rademacher);
        let g = cf(Family::Uniform);
        let a = 0.5;
        let bound = fixed_point_gap_bound(&g, &f, a, &grid).unwrap();
        let fa = CharFn::discounted_product(&f, a, 1e-12).unwrap();
        let dist = fourier_distance(&g, &fa, 2.0, &grid).unwrap();
        assert!(
            dist.value <= bound + dist.error_estimate + 1e-9,
            "{} vs {bound}",
            dist.value
        );
    }

    #[test]
    fn gerber_bound_cases() {
        // C = 5.4 with ρ₃ = 1 at a = 0.99
        assert!((gerber_bound(0.99, 1.0).unwrap() - 0.54).abs() < 1e-12);
        // normal ρ₃ = 2√(2/π)
        let rho3 = Distribution::new(Family::Normal).unwrap().abs_moment(3.0).unwrap();
        assert!((gerber_bound(0.99, rho3).unwrap() - 0.8617153256670946).abs() < 1e-12);
        // (1−a)^{1/2} scaling
        let r = gerber_bound(0.9999, 1.0).unwrap() / gerber_bound(0.99, 1.0).unwrap();
        assert!((r - 0.1).abs() < 1e-12);
        // diverging third moment is refused
        let t = Distribution::new(Family::StudentT { nu: 2.5 }).unwrap();
        assert!(gerber_bound(0.99, t.abs_moment(3.0).unwrap()).is_err());
        assert!(gerber_bound(1.0, 1.0).is_err());
    }

    #[test]
    fn kolmogorov_conversion_cases() {
        assert_eq!(kolmogorov_from_d2(0.0).unwrap(), 0.0);
        assert!((kolmogorov_from_d2(0.001).unwrap() - 0.5005247369446697).abs() < 1e-12);
        // vacuous beyond the trivial Kolmogorov cap of 1
        assert!((kolmogorov_from_d2(1.0).unwrap() - 5.005247369446697).abs() < 1e-12);
        assert!(kolmogorov_from_d2(-0.1).is_err());
    }
}
