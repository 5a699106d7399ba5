//! Seeded randomized checks of the library's identities, grouped into suites.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::confluence::{
    confluence_limits, cusped_exponent_table, cusped_monomials, cusped_sphere, invert_monomials, lambda_lengths,
    limiting_cubic, symbolic_four_holed_sphere, ChewSubstitution, CuspedParams, Inversion, CUSPED_VARIABLES,
};
use crate::error::{Error, Result};
use crate::fatgraph::{fricke_coordinates, fricke_cubic, four_holed_sphere, FrickeVogt};
use crate::laurent::LaurentPoly;
use crate::matrix::{mat2, Mat2};
use crate::scalar::{q, Rational, Ring};
use crate::snakes::{transport, FGAssignment};
use crate::surface::{cylinder_two_cusps, path_matrix, two_triangles, TrianglePathWord, TriangulatedSurface, VarClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Fricke,
    FrickePv,
    Transport,
    Amalgamation,
    Skein,
    Lambda,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Fricke, Suite::FrickePv, Suite::Transport, Suite::Amalgamation, Suite::Skein, Suite::Lambda];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fricke => "fricke",
            Suite::FrickePv => "frickepv",
            Suite::Transport => "transport",
            Suite::Amalgamation => "amalgamation",
            Suite::Skein => "skein",
            Suite::Lambda => "lambda",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidWord(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub trials: usize,
    /// Rank for the transport and amalgamation suites.
    pub n: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, trials: 20, n: 3 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trial {
    pub index: usize,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub trials: Vec<Trial>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.trials.iter().all(|t| t.pass)
    }
    pub fn pass_count(&self) -> usize {
        self.trials.iter().filter(|t| t.pass).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.trials {
            writeln!(f, "{} trial {}: {} {}", self.suite, t.index + 1, if t.pass { "PASS" } else { "FAIL" }, t.detail)?;
        }
        write!(
            f,
            "{}: {}/{} passed, {}",
            self.suite,
            self.pass_count(),
            self.trials.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn pos(rng: &mut ChaCha8Rng) -> Rational {
    q(rng.gen_range(1..=12), rng.gen_range(1..=12))
}

fn trial(index: usize, check: Result<(bool, String)>) -> Trial {
    match check {
        Ok((pass, detail)) => Trial { index, pass, detail },
        Err(e) => Trial { index, pass: false, detail: format!("error: {e}") },
    }
}

pub fn run(suite: Suite, cfg: &Config) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let trials = match suite {
        Suite::Fricke => (0..cfg.trials).map(|i| trial(i, fricke_trial(&mut rng))).collect(),
        Suite::FrickePv => {
            let limits = symbolic_limits();
            (0..cfg.trials).map(|i| trial(i, limits.clone().and_then(|l| frickepv_trial(&l, &mut rng)))).collect()
        }
        Suite::Transport => (0..cfg.trials).map(|i| trial(i, transport_trial(cfg.n, &mut rng))).collect(),
        Suite::Amalgamation => (0..cfg.trials).map(|i| trial(i, amalgamation_trial(cfg.n, &mut rng))).collect(),
        Suite::Skein => (0..cfg.trials).map(|i| trial(i, skein_trial(&mut rng))).collect(),
        Suite::Lambda => {
            let mut out = vec![trial(0, lambda_symbolic())];
            out.extend((0..cfg.trials).map(|i| trial(i + 1, lambda_trial(&mut rng))));
            out
        }
    };
    Report { suite, trials }
}

fn fricke_trial(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let ls = [pos(rng), pos(rng), pos(rng)];
    let lp = [pos(rng), pos(rng), pos(rng)];
    let shown = ls.iter().chain(&lp).map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
    let (g, loops) = four_holed_sphere(ls, lp)?;
    let value = fricke_cubic(&fricke_coordinates(&g, &loops)?);
    Ok((value == Rational::from_i64(4), format!("lambda = ({shown}), cubic = {value}")))
}

/// The rescaled confluence limits as Laurent polynomials in the remaining parameters.
pub fn symbolic_limits() -> Result<FrickeVogt<LaurentPoly>> {
    let (g, loops) = symbolic_four_holed_sphere();
    let fv = fricke_coordinates(&g, &loops)?;
    let sub = ChewSubstitution::for_edge(&g, "p3", LaurentPoly::var("k1"), LaurentPoly::var("k2"))?;
    confluence_limits(&fv, &sub)
}

fn eval_limits(l: &FrickeVogt<LaurentPoly>, env: &BTreeMap<String, Rational>) -> Result<FrickeVogt<Rational>> {
    let ev = |p: &LaurentPoly| p.eval(env).ok_or_else(|| Error::IncompleteAssignment(format!("{p:?}")));
    Ok(FrickeVogt {
        x: [ev(&l.x[0])?, ev(&l.x[1])?, ev(&l.x[2])?],
        g: [ev(&l.g[0])?, ev(&l.g[1])?, ev(&l.g[2])?, ev(&l.g[3])?],
    })
}

fn frickepv_trial(limits: &FrickeVogt<LaurentPoly>, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut env: BTreeMap<String, Rational> =
        ["s1", "s2", "s3", "p1", "p2", "k1", "k2"].iter().map(|v| (v.to_string(), pos(rng))).collect();
    let at = eval_limits(limits, &env)?;
    let cubic = limiting_cubic(&at);
    let t = pos(rng);
    env.insert("k1".into(), env["k1"].clone() * t.clone());
    env.insert("k2".into(), env["k2"].clone() / t);
    let invariant = eval_limits(limits, &env)? == at;
    Ok((cubic.is_zero() && invariant, format!("cubic = {cubic}, pinning rescaling invariant = {invariant}")))
}

fn transport_trial(n: usize, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let z = FGAssignment::random(n, rng);
    let t: Vec<_> = (1..=3).map(|i| transport(&z, i)).collect::<Result<_>>()?;
    let prod = &(&t[0] * &t[1]) * &t[2];
    let scalar = prod.scalar_value();
    let equivariant = transport(&z.rotate(), 1)? == t[1];
    Ok((
        scalar.is_some() && equivariant,
        format!(
            "n = {n}, T1T2T3 = {}, T2 = T1(sigma Z): {equivariant}",
            scalar.map_or("not scalar".to_string(), |c| format!("{c}·I"))
        ),
    ))
}

fn invariant_under_pairs(s: &TriangulatedSurface<Rational>, words: &[TrianglePathWord], rng: &mut ChaCha8Rng) -> Result<bool> {
    for class in s.amalgamation_classes() {
        if !matches!(class, VarClass::Amalgamated(..)) {
            continue;
        }
        let moved = s.rescale_pair(&class, &pos(rng))?;
        for w in words {
            if !path_matrix(s, w)?.proj_eq(&path_matrix(&moved, w)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn amalgamation_trial(n: usize, rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let (s, m) = two_triangles(FGAssignment::random(n, rng), FGAssignment::random(n, rng))?;
    let two = invariant_under_pairs(&s, &[m], rng)?;
    let (c, words) = cylinder_two_cusps(FGAssignment::random(n, rng), FGAssignment::random(n, rng))?;
    let words: Vec<_> = words.into_values().collect();
    let cyl = invariant_under_pairs(&c, &words, rng)?;
    Ok((two && cyl, format!("n = {n}, two triangles invariant = {two}, cylinder invariant = {cyl}")))
}

/// A random rational matrix of determinant one.
pub fn random_sl2(rng: &mut ChaCha8Rng) -> Mat2<Rational> {
    loop {
        let (a, b, c) = (q(rng.gen_range(-9..=9), rng.gen_range(1..=5)), pos(rng), q(rng.gen_range(-9..=9), rng.gen_range(1..=5)));
        if a.is_zero() {
            continue;
        }
        // d = (1 + bc)/a
        let d = (Rational::one() + b.clone() * c.clone()) / a.clone();
        return mat2(a, b, c, d);
    }
}

fn skein_trial(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let (a, b) = (random_sl2(rng), random_sl2(rng));
    let b_inv = b.inverse().ok_or(Error::Singular)?;
    let lhs = (&a * &b).trace() + (&a * &b_inv).trace();
    let rhs = a.trace() * b.trace();
    Ok((lhs == rhs, format!("Tr(AB)+Tr(AB^-1) = {lhs}, Tr(A)Tr(B) = {rhs}")))
}

fn lambda_symbolic() -> Result<(bool, String)> {
    let v = LaurentPoly::var;
    let (g, arcs) = cusped_sphere(CuspedParams { s: [v("s1"), v("s2"), v("s3")], p: [v("p1"), v("p2")], k: [v("k1"), v("k2")] })?;
    let lengths = lambda_lengths(&g, &arcs)?;
    let expected = cusped_monomials();
    let ok = lengths.iter().all(|(k, l)| expected.get(k) == Some(l));
    Ok((ok, format!("{} arcs match their monomials symbolically: {ok}", lengths.len())))
}

fn lambda_trial(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let xs: [Rational; 7] = std::array::from_fn(|_| pos(rng));
    let params = CuspedParams::from_values(xs.clone());
    let (g, arcs) = cusped_sphere(params.clone())?;
    let mut vals = lambda_lengths(&g, &arcs)?;
    vals.insert("p1".into(), params.p[0].clone());
    vals.insert("p2".into(), params.p[1].clone());
    let ok = match invert_monomials(&vals, &cusped_exponent_table())? {
        Inversion::Exact(back) => CUSPED_VARIABLES.iter().zip(&xs).all(|(name, x)| back.get(*name) == Some(x)),
        Inversion::Approx(_) => false,
    };
    Ok((ok, format!("inversion recovers all {} parameters: {ok}", xs.len())))
}
