//! The quantitative bound chain on d₂(F_a, Φ).
//!
//! For a base law with finite s-moment, s in (2, 3]:
//!
//!   d₂(F_a, Φ)  ≤  sup_w env_a(w) |C_F(w) − C_Φ(w)|/w²   (envelope bound)
//!               ≤  [(s−2)(1−a²)/(e a²)]^{(s−2)/2} d_s(F, Φ)   (rate bound)
//!
//! with env_a(w) = exp(−(aw)²/(2(1−a²))). The rate bound vanishes as
//! a → 1 like (1−a²)^{(s−2)/2} and scales with the distance of the base
//! law itself from normal.
//!
//! ```sh
//! cargo run --release -p discounted-clt --example rate_bounds
//! ```

use discounted_clt::bounds::{envelope_distance_bound, envelope_sup, rate_bound};
use discounted_clt::charfn::CharFn;
use discounted_clt::distributions::Distribution;
use discounted_clt::metrics::{fourier_distance, GridSpec};

fn main() {
    let grid = GridSpec::default();
    let phi = CharFn::standard_normal();
    let s = 3.0;

    for name in ["rademacher", "exponential"] {
        let f = CharFn::analytic(&Distribution::from_name(name).unwrap());
        let ds = fourier_distance(&f, &phi, s, &grid).unwrap().value;
        println!("base = {name}, d_{s}(F, Phi) = {ds:.6}");
        println!(
            "{:>7} {:>14} {:>14} {:>14}",
            "a", "d2 measured", "envelope bnd", "rate bound"
        );
        for a in [0.9, 0.99, 0.999] {
            let fa = CharFn::discounted_product(&f, a, 1e-12).unwrap();
            let d2 = fourier_distance(&fa, &phi, 2.0, &grid).unwrap().value;
            let env = envelope_distance_bound(&f, a, &grid).unwrap();
            let rate = rate_bound(a, s, ds).unwrap();
            println!("{a:>7} {d2:>14.8} {env:>14.8} {rate:>14.8}");
        }
        println!();
    }

    // the closed-form kernel supremum behind the rate bound
    println!("envelope kernel supremum (closed form):");
    for (a, s) in [(0.6, 3.0), (0.9, 2.5), (0.99, 2.1)] {
        let (w, v) = envelope_sup(a, s).unwrap();
        println!("  a={a}, s={s}: sup = {v:.6} at w* = {w:.4}");
    }
}
