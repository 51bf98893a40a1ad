//! Closed-form bounds on the Gromov-Hausdorff distance between the unit
//! balls of the Euclidean plane and the sphere, with a grid check of the
//! upper bound.
//!
//! ```text
//! cargo run --example es_bounds
//! ```

use nlgs::gh::analytic_es_bounds;

fn main() {
    let (lower, upper) = analytic_es_bounds();
    println!("lower bound {lower:.6}");
    println!("upper bound {upper:.6}");

    // Disk at height 1 - x under the cap; worst gap over the family.
    let (s, c) = 1f64.sin_cos();
    let top = 1.0 - c;
    let gap = |x: f64| x.max(top - x).max(((1.0 - s).powi(2) + (top - x).powi(2)).sqrt());
    let n = 1_000_000;
    let (best_x, best) = (0..=n)
        .map(|k| top * k as f64 / n as f64)
        .map(|x| (x, gap(x)))
        .fold((0.0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    println!("grid minimum {best:.6} at height offset {best_x:.6}");
}
