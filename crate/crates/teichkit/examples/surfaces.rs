//! Gluing triangles: amalgamated variables, path matrices, and undoing a gluing.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use teichkit::flags::Side;
use teichkit::snakes::FGAssignment;
use teichkit::surface::{cylinder_two_cusps, path_matrix, SideRef, VarClass};
use teichkit::{q, Result};

fn main() -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (cyl, words) = cylinder_two_cusps(FGAssignment::random(3, &mut rng), FGAssignment::random(3, &mut rng))?;
    println!("open sides: {:?}", cyl.open_sides().iter().map(|s| s.to_string()).collect::<Vec<_>>());
    for class in cyl.amalgamation_classes() {
        if let VarClass::Amalgamated(a, b) = &class {
            println!("amalgamated {a:?} ~ {b:?}");
        }
    }
    for (name, w) in &words {
        println!("{name} = {w}\n{}", path_matrix(&cyl, w)?);
    }

    // Rescaling an amalgamated pair by t and 1/t leaves every path matrix projectively fixed.
    let class = cyl.amalgamation_classes().into_iter().find(|c| matches!(c, VarClass::Amalgamated(..))).expect("glued");
    let moved = cyl.rescale_pair(&class, &q(7, 2))?;
    for (name, w) in &words {
        println!("{name} unchanged: {}", path_matrix(&cyl, w)?.proj_eq(&path_matrix(&moved, w)?));
    }

    // Tearing t31-b23 apart: each amalgamated product p is split as (p, 1).
    let (a, b) = (SideRef::new("t", Side::S31), SideRef::new("b", Side::S23));
    let split: Vec<_> = (1..3)
        .map(|k| {
            let p = cyl.value(&("t".into(), Side::S31.vertex(3, k)))?.clone() * cyl.value(&("b".into(), Side::S23.vertex(3, 3 - k)))?.clone();
            Ok((p, q(1, 1)))
        })
        .collect::<Result<_>>()?;
    let strip = cyl.unamalgamate(&a, &b, &split)?;
    println!("after tearing: {} gluing(s), open sides {:?}", strip.gluings().len(), strip.open_sides().iter().map(|s| s.to_string()).collect::<Vec<_>>());
    Ok(())
}
