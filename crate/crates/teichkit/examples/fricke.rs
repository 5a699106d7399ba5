//! Fricke-Vogt coordinates of a four-holed sphere and the cubic they satisfy.

use teichkit::fatgraph::{fricke_coordinates, fricke_cubic, four_holed_sphere};
use teichkit::{q, Result};

fn main() -> Result<()> {
    let (graph, loops) = four_holed_sphere([q(2, 1), q(3, 5), q(7, 4)], [q(1, 2), q(5, 3), q(4, 1)])?;
    for w in &loops {
        println!("{w}");
    }
    let fv = fricke_coordinates(&graph, &loops)?;
    for (i, x) in fv.x.iter().enumerate() {
        println!("x{} = {x}", i + 1);
    }
    for (i, g) in fv.g.iter().enumerate() {
        println!("G{} = {g}", i + 1);
    }
    println!("cubic = {}", fricke_cubic(&fv));
    Ok(())
}
