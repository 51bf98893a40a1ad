//! Enumerate signatures, build the weighted search graph and inspect its
//! Laplacian spectrum.
//!
//! ```text
//! cargo run --release --example build_search_space [max_factors] [out.json]
//! ```

use nlgs::bo::GraphEigen;
use nlgs::gh::GhTable;
use nlgs::space::{build_graph, enumerate_signatures, GraphVariant, WeightMode};

fn main() -> nlgs::Result<()> {
    let mut args = std::env::args().skip(1);
    let max: usize = args.next().map_or(4, |s| s.parse().expect("max factors"));
    let out = args.next();

    let nodes = enumerate_signatures(max, None)?;
    let g = build_graph(nodes, Some(&GhTable::paper_preset()), GraphVariant::GhWeighted, WeightMode::Exact)?;
    println!("{} nodes, {} edges, connected: {}", g.len(), g.edges().len(), g.is_connected());
    println!("distinct edge weights: {:?}", g.distinct_edge_weights());

    let show = |a: &str, b: &str| {
        let (i, j) = (g.index_of(a).unwrap(), g.index_of(b).unwrap());
        println!("  w({a} ; {b}) = {}", g.weight(i, j));
    };
    show("H,S", "E,H");
    show("H,S", "E,E");
    show("E,H", "E,H,H");

    let eig = GraphEigen::new(&g)?;
    let values = eig.values.as_slice();
    println!("Laplacian spectrum: min {:.3e}, second {:.4}, max {:.4}", values[0], values[1], values[values.len() - 1]);

    if let Some(path) = out {
        g.save(path.as_ref())?;
        println!("wrote {path}");
    }
    Ok(())
}
