//! Sweep-based Gromov-Hausdorff estimates against the embedded hyperbolic
//! ball. Resolutions are small by default so this finishes in seconds.
//!
//! ```text
//! cargo run --release --example gh_estimate [res] [offset_steps]
//! ```

use nlgs::gh::{estimate_gh_eh_with, estimate_gh_sh_with, hyperbolic_cloud, BlanusaEmbedding, SweepConfig};
use nlgs::hausdorff::diameter;

fn main() -> nlgs::Result<()> {
    let mut args = std::env::args().skip(1);
    let res: usize = args.next().map_or(60, |s| s.parse().expect("resolution"));
    let steps: usize = args.next().map_or(20, |s| s.parse().expect("offset steps"));
    let cfg = SweepConfig { res_r: res, res_t: res, sphere_res: res / 2, offset_steps: steps, offset_range: 0.5 };

    let emb = BlanusaEmbedding::compute(2000, 1e-5)?;
    let target = hyperbolic_cloud(&emb, &cfg)?;
    println!("hyperbolic cloud: {} points, diameter {:.4}", target.len(), diameter(&target));

    for (name, est) in [
        ("E-H", estimate_gh_eh_with(&target, &cfg, true)?),
        ("S-H", estimate_gh_sh_with(&target, &cfg, true)?),
    ] {
        println!(
            "{name}: {:.4} over {} placements (diameter bound {:.4}), best axes {:?} offset {:+.2} on axis {}",
            est.value,
            est.candidates,
            est.diameter_bound.unwrap_or(f64::NAN),
            est.best.axes,
            est.best.offset,
            est.best.offset_axis
        );
    }
    Ok(())
}
