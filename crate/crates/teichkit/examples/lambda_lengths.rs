//! λ-lengths of the five arcs between the two cusps, and recovering the shear
//! and pinning parameters from them.

use std::collections::BTreeMap;

use teichkit::confluence::{
    cusped_exponent_table, cusped_monomials, cusped_sphere, invert_monomials, lambda_lengths, CuspedParams,
    CUSPED_VARIABLES,
};
use teichkit::{q, Result};

fn main() -> Result<()> {
    for (arc, m) in cusped_monomials() {
        println!("lambda_{arc} = {m}");
    }
    let table = cusped_exponent_table();
    println!("exponent table rank {}", table.rank());

    let params = CuspedParams { s: [q(2, 1), q(3, 2), q(1, 3)], p: [q(5, 1), q(1, 4)], k: [q(3, 1), q(2, 7)] };
    let (graph, arcs) = cusped_sphere(params.clone())?;
    let mut values: BTreeMap<String, _> = lambda_lengths(&graph, &arcs)?;
    values.insert("p1".into(), params.p[0].clone());
    values.insert("p2".into(), params.p[1].clone());
    for (arc, v) in &values {
        println!("{arc}: {v}");
    }
    let back = invert_monomials(&values, &table)?.to_f64();
    for (name, x) in CUSPED_VARIABLES.iter().zip(params.values()) {
        println!("{name}: {x} -> {}", back[*name]);
    }
    Ok(())
}
