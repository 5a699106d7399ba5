//! Three flags in ℝ³: general position, the line configuration on Δ₃, the triple
//! ratio and a pencil cross ratio.

use teichkit::flags::{general_position, line_config, pencil_cross_ratio, Flag, Side};
use teichkit::{q, Result};

fn main() -> Result<()> {
    let (al, be, ga) = (q(2, 1), q(3, 1), q(5, 1));
    let f1 = Flag::standard(3);
    let f2 = Flag::opposite(3);
    let f3 = Flag::from_rows(vec![vec![q(1, 1), al.clone(), be.clone()], vec![q(0, 1), q(1, 1), ga.clone()], vec![q(0, 1), q(0, 1), q(1, 1)]])?;
    println!("general position: {}", general_position(&f1, &f2, &f3)?);

    let cfg = line_config(&f1, &f2, &f3)?;
    for (t, line) in cfg.lines() {
        println!("line {t:?}: ({})", line.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "));
    }
    println!("side basis on 12:\n{}", cfg.side_basis(Side::S12)?);
    println!("triple ratio at (1,1,1) = {}  (beta/(alpha gamma - beta) = {})", cfg.triple_ratio((1, 1, 1))?, be.clone() / (al * ga.clone() - be));


    // A second triangle on the other side of the edge F1F2, with its own third flag.
    let (de, ep, et) = (q(7, 1), q(2, 1), q(3, 1));
    let f4 = Flag::from_rows(vec![vec![q(1, 1), de, ep], vec![q(0, 1), q(1, 1), et.clone()], vec![q(0, 1), q(0, 1), q(1, 1)]])?;
    let right = line_config(&f2, &f1, &f4)?;
    let (l, r) = (|t| cfg.line(t).map(|v| v.as_slice()), |t| right.line(t).map(|v| v.as_slice()));
    println!("cr1 = {}", pencil_cross_ratio([l((2, 0, 0))?, l((1, 1, 0))?, l((1, 0, 1))?, r((0, 1, 1))?])?);
    println!("cr2 = {}  (gamma/eta = {})", pencil_cross_ratio([l((1, 1, 0))?, l((0, 2, 0))?, l((0, 1, 1))?, r((1, 0, 1))?])?, ga / et);
    Ok(())
}
