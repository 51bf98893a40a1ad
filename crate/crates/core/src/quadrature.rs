//! Composite Simpson quadrature.

/// Composite Simpson rule for `f` over `[a, b]` with `panels` subintervals
/// (rounded up to an even count).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels.max(2).next_multiple_of(2);
    let h = (b - a) / n as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let x = a + i as f64 * h;
        if i % 2 == 1 {
            odd += f(x);
        } else {
            even += f(x);
        }
    }
    h / 3.0 * (f(a) + 4.0 * odd + 2.0 * even + f(b))
}

/// Single-panel Simpson estimate over `[a, b]`.
#[inline]
pub fn simpson_panel<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
}

/// Running integral of `f` on the uniform grid `a, a + h, .., b`:
/// entry `k` holds the integral from `a` to `a + k h`.
pub fn cumulative<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> Vec<f64> {
    let h = (b - a) / intervals as f64;
    let mut out = Vec::with_capacity(intervals + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 0..intervals {
        let lo = a + k as f64 * h;
        acc += simpson_panel(&f, lo, lo + h);
        out.push(acc);
    }
    out
}
