//! `teichkit` command-line front end.
//!
//! Exit codes: 0 success, 1 a verification trial failed, 2 unreadable or
//! schema-invalid input, 3 input rejected by the library.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use teichkit::fatgraph::{evaluate, trace_k, Param};
use teichkit::scene::{pants_scene, render_svg, Scene};
use teichkit::schema::{self, DecodeError, GraphJson, JsonScalar, WordJson, SCHEMA};
use teichkit::verify::{self, Suite};
use teichkit::{Error, Rational};

#[derive(Parser)]
#[command(name = "teichkit", version, about = "Exact holonomy and Fock-Goncharov computations")]
struct Cli {
    /// Scalar type for holonomy computations.
    #[arg(long, global = true, env = "TEICHKIT_SCALAR", value_enum, default_value_t = ScalarMode::Rational)]
    scalar: ScalarMode,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarMode {
    Rational,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a path word on a fat graph; prints the matrix, trace and Tr_K.
    Holonomy { graph: PathBuf, word: PathBuf },
    /// Run a seeded verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Rank for the transport and amalgamation suites.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=8))]
        n: u64,
    },
    /// Render a half-plane scene to SVG.
    Render {
        scene: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the pair-of-pants scene (axes and fundamental-domain geodesics).
    Pants {
        /// Shear coordinates s1,s2,s3.
        #[arg(long, value_delimiter = ',', conflicts_with = "lambda", required_unless_present = "lambda")]
        shear: Option<Vec<f64>>,
        /// Half-shears e^(s/2), comma separated.
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<f64>>,
        /// Writes the scene JSON here; with an .svg extension writes the rendering instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

enum Failure {
    Input(String),
    Domain(Error),
    Verify,
}

impl From<DecodeError> for Failure {
    fn from(e: DecodeError) -> Self {
        match e {
            DecodeError::Schema { .. } => Failure::Input(e.to_string()),
            DecodeError::Domain(d) => Failure::Domain(d),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn holonomy<T: JsonScalar + Param>(graph: &str, word: &str) -> Result<Value, Failure> {
    let g = schema::from_str::<GraphJson>(graph)?.to_graph::<T>()?;
    let w = schema::from_str::<WordJson>(word)?.to_word()?;
    let m = evaluate(&g, &w)?;
    Ok(json!({
        "schema": SCHEMA,
        "word": w.to_string(),
        "matrix": schema::matrix_to_json(&m),
        "trace": m.trace().to_json(),
        "trace_k": trace_k(&m).to_json(),
    }))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Holonomy { graph, word } => {
            let (g, w) = (read(&graph)?, read(&word)?);
            let out = match cli.scalar {
                ScalarMode::Rational => holonomy::<Rational>(&g, &w)?,
                ScalarMode::Float => holonomy::<f64>(&g, &w)?,
            };
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Command::Verify { suite, seed, trials, n } => {
            let report = verify::run(suite, &verify::Config { seed, trials, n: n as usize });
            println!("{report}");
            if !report.passed() {
                return Err(Failure::Verify);
            }
        }
        Command::Render { scene, out } => {
            let scene: Scene = schema::from_str(&read(&scene)?)?;
            let svg = render_svg(&scene)?;
            match out {
                Some(p) => write(&p, &svg)?,
                None => print!("{svg}"),
            }
        }
        Command::Pants { shear, lambda, out } => {
            let s: Vec<f64> = match (shear, lambda) {
                (Some(s), _) => s,
                (None, Some(l)) => {
                    if l.iter().any(|x| !(*x > 0.0)) {
                        return Err(Error::NonpositiveParameter("lambda".into()).into());
                    }
                    l.iter().map(|x| 2.0 * x.ln()).collect()
                }
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let [s1, s2, s3] = s[..] else {
                return Err(Failure::Input(format!("expected three values, got {}", s.len())));
            };
            let scene = pants_scene([s1, s2, s3])?;
            let text = match &out {
                Some(p) if p.extension().is_some_and(|e| e == "svg") => render_svg(&scene)?,
                _ => schema::to_string(&scene) + "\n",
            };
            match out {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            let debug = format!("{e:?}");
            let kind = debug.split(['(', ' ', '{']).next().unwrap_or("Error");
            eprintln!("error: {kind}: {e}");
            ExitCode::from(3)
        }
    }
}
