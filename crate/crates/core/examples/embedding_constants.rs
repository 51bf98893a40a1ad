//! Constants of the explicit embedding of the hyperbolic plane into `R^6`,
//! and how far the map is from an isometry.
//!
//! ```text
//! cargo run --release --example embedding_constants [grid_step]
//! ```

use nlgs::gh::{isometry_diagnostic, BlanusaEmbedding};

fn main() -> nlgs::Result<()> {
    let step: f64 = std::env::args().nth(1).map_or(1e-5, |s| s.parse().expect("grid step"));
    let emb = BlanusaEmbedding::compute(2000, step)?;
    println!("A   = {:.9}", emb.a);
    println!("G1  = {:.9}", emb.g1);
    println!("G2  = {:.9}", emb.g2);
    println!("c   = {:.9}", emb.c);
    println!("eps = {:.9}", emb.eps);

    println!("\n   x      psi1     psi2   psi1^2+psi2^2");
    for k in -4..=4 {
        let x = k as f64 * 0.5;
        let (p1, p2) = (emb.psi1(x), emb.psi2(x));
        println!("{x:5.1}  {p1:.5}  {p2:.5}  {:.12}", p1 * p1 + p2 * p2);
    }

    let r = isometry_diagnostic(&emb, 200, 7);
    println!(
        "\npullback metric over {} samples: max relative deviation {:.4}, positive definite: {}",
        r.samples, r.max_relative_deviation, r.all_positive_definite
    );
    Ok(())
}
