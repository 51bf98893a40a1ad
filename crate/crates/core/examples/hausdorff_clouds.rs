//! Exact Hausdorff distances between sampled unit balls.
//!
//! ```text
//! cargo run --release --example hausdorff_clouds
//! ```

use nlgs::gh::sample_ball;
use nlgs::hausdorff::{directed_hausdorff, hausdorff_dist, PointCloud};
use nlgs::model_spaces::SpaceKind;

fn main() -> nlgs::Result<()> {
    let disk = sample_ball(SpaceKind::Euclidean, 100, 100, None)?;
    let cap = sample_ball(SpaceKind::Hypersphere, 60, 60, None)?;

    // Lift the disk into R^3 at the height that balances the two one-sided gaps.
    for height in [1.0, 0.9, (1.0 + 1f64.cos()) / 2.0] {
        let lifted: Vec<[f64; 3]> = disk.points().map(|p| [p[0], p[1], height]).collect();
        let lifted = PointCloud::from_points(&lifted)?;
        println!(
            "height {height:.4}: cap->disk {:.4}, disk->cap {:.4}, Hausdorff {:.4}",
            directed_hausdorff(&cap, &lifted, None)?,
            directed_hausdorff(&lifted, &cap, None)?,
            hausdorff_dist(&lifted, &cap)?
        );
    }
    Ok(())
}
