//! The `teichkit/1` JSON documents: a fat graph and a word, written and read back.

use teichkit::fatgraph::{evaluate, pair_of_pants};
use teichkit::schema::{self, GraphJson, WordJson};
use teichkit::{q, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (graph, loops) = pair_of_pants(q(2, 1), q(1, 3), q(5, 2))?;
    let gtext = schema::to_string(&GraphJson::from_graph(&graph));
    let wtext = schema::to_string(&WordJson::from_word(&loops[2]));
    println!("{gtext}\n{wtext}");

    let g = schema::from_str::<GraphJson>(&gtext)?.to_graph::<Rational>()?;
    let w = schema::from_str::<WordJson>(&wtext)?.to_word()?;
    println!("holonomy {}", evaluate(&g, &w)?);

    let bad = r#"{"schema": "teichkit/1", "tokens": ["R", 3]}"#;
    println!("rejected: {}", schema::from_str::<WordJson>(bad).unwrap_err());
    Ok(())
}
