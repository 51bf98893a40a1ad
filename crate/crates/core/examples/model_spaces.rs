//! Exponential maps, geodesic distances and the hyperbolic chart chain.
//!
//! ```text
//! cargo run --example model_spaces
//! ```

use nlgs::model_spaces::{
    exp0_gminus1, hyperboloid_to_poincare, poincare_to_uhp, uhp_to_gminus1, ModelSpace, SpaceKind,
};
use nlgs::product::Signature;

fn main() -> nlgs::Result<()> {
    for kind in SpaceKind::ALL {
        let m = ModelSpace::unit(kind);
        let o = m.origin();
        let v = match kind {
            SpaceKind::Euclidean => vec![0.3, 0.4],
            SpaceKind::Hyperboloid => vec![0.0, 0.3, 0.4],
            SpaceKind::Hypersphere => vec![0.3, 0.4, 0.0],
        };
        let p = m.exp_map(&o, &v)?;
        println!("{:?}: exp_o(v) = {:?}, d(o, exp_o(v)) = {:.12}", kind, p, m.dist(&o, &p)?);
    }

    // A tangent vector at the hyperboloid pole, pushed through every chart.
    let v = [0.5f64, 0.0];
    let sheet = [v[0].sinh(), v[1], v[0].cosh()];
    let disk = hyperboloid_to_poincare(sheet)?;
    let half = poincare_to_uhp(disk)?;
    let g = uhp_to_gminus1(half)?;
    println!("sheet {sheet:?}\n  disk {disk:?}\n  half plane {half:?}\n  (R^2, g_-1) {g:?}");
    println!("  direct: {:?}", exp0_gminus1(v));

    let sig: Signature = "S,E,H".parse()?;
    let canon = sig.canonicalize();
    let a = canon.project(&[0.1, 0.2, 0.3, 0.0, 0.2, 0.2])?;
    let b = canon.project(&[0.0; 6])?;
    println!("{sig} -> {canon}: product distance {:.6}", canon.dist(&a, &b)?);
    println!("flattened with padding: {:?}", canon.flatten(&a, true));
    Ok(())
}
