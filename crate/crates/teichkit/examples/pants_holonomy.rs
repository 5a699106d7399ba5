//! Holonomy of the pair of pants from its fat graph, exactly over ℚ.
//!
//! Run with `cargo run --example pants_holonomy`.

use teichkit::fatgraph::{evaluate, pair_of_pants};
use teichkit::halfplane::{FixedPoints, MobiusMap};
use teichkit::{q, Result};

fn main() -> Result<()> {
    // Half-shears λᵢ = e^{sᵢ/2}; rational values keep everything exact.
    let (graph, loops) = pair_of_pants(q(2, 1), q(1, 3), q(5, 2))?;
    for (i, w) in loops.iter().enumerate() {
        let m = evaluate(&graph, w)?;
        let g = MobiusMap::from_matrix(&m)?;
        println!("gamma{} = {w}", i + 1);
        println!("  matrix {m}");
        println!("  trace {}, {:?}", m.trace(), g.classify());
        if let FixedPoints::Boundary(pts) = g.fixed_points()? {
            println!("  fixed points {}", pts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "));
        }
        println!("  translation length {:.6}", g.translation_length()?);
    }
    Ok(())
}
