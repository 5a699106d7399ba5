//! Draw the pair of pants in the upper half-plane: invariant axes and the common
//! perpendiculars bounding a fundamental domain.
//!
//! `cargo run --example render_scene -- pants.svg` writes the SVG; without an
//! argument it prints the scene JSON.

use teichkit::scene::{pants_scene, render_svg};
use teichkit::schema;
use teichkit::Result;

fn main() -> Result<()> {
    let scene = pants_scene([2f64.ln(), 0.0, 3f64.ln()])?;
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, render_svg(&scene)?).expect("write svg");
            println!("wrote {path}");
        }
        None => println!("{}", schema::to_string(&scene)),
    }
    Ok(())
}
