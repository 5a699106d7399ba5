//! Chewing-gum confluence: open the loop p3 into two pinned edges and take the
//! rescaled ε → 0 limits of the Fricke-Vogt coordinates, symbolically.

use teichkit::confluence::limiting_cubic;
use teichkit::verify::symbolic_limits;
use teichkit::Result;

fn main() -> Result<()> {
    let limits = symbolic_limits()?;
    for (i, x) in limits.x.iter().enumerate() {
        println!("x{}~ = {x}", i + 1);
    }
    for (i, g) in limits.g.iter().enumerate() {
        println!("G{}~ = {g}", i + 1);
    }
    // The limits only see k1 and k2 through their product.
    println!("limiting cubic = {}", limiting_cubic(&limits));
    Ok(())
}
