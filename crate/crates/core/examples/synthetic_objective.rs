//! Score every 13-factor signature against a ground truth through a frozen
//! random decoder.
//!
//! ```text
//! cargo run --release --example synthetic_objective [truth] [seed]
//! ```

use nlgs::product::Signature;
use nlgs::space::enumerate_signatures;
use nlgs::synthetic::generate_objective;

fn main() -> nlgs::Result<()> {
    let mut args = std::env::args().skip(1);
    let truth: Signature = args.next().unwrap_or_else(|| "E,E,E,E,H,H,H,H,H,S,S,S,S".into()).parse()?;
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));

    let candidates = enumerate_signatures(truth.len(), Some(truth.len()))?;
    let table = generate_objective(&truth, &candidates, seed)?;
    let mut ranked: Vec<(&String, &f64)> = table.values.iter().collect();
    ranked.sort_by(|a, b| a.1.total_cmp(b.1));
    println!("truth {} over {} candidates", table.truth, ranked.len());
    for (sig, v) in ranked.iter().take(6) {
        println!("  {v:.6e}  {sig}");
    }
    println!("  ...");
    let (sig, v) = ranked[ranked.len() - 1];
    println!("  {v:.6e}  {sig}");
    if !table.near_zero().is_empty() {
        println!("collisions with the truth: {:?}", table.near_zero());
    }
    Ok(())
}
