//! Chewing-gum degenerations: opening an edge into two cusps, the ε → 0 limits of
//! the trace coordinates, and λ-lengths of arcs between cusps.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fatgraph::{self, EdgeKind, FatGraph, FrickeVogt, HalfEdge, Param, PathWord, Token, Vertex};
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::scalar::{rational_root, Rational, Ring, Scalar};

/// Name of the formal degeneration parameter inside Laurent expressions.
pub const EPS: &str = "eps";

/// Replaces the half-shear of `edge` by `κ₁κ₂/ε`, i.e. `s = k₁ + k₂ − 2 log ε`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChewSubstitution {
    edge: String,
    kappa1: LaurentPoly,
    kappa2: LaurentPoly,
}

impl ChewSubstitution {
    /// The edge must be internal and carry a bare symbol named after itself.
    pub fn for_edge(
        graph: &FatGraph<LaurentPoly>,
        edge: &str,
        kappa1: LaurentPoly,
        kappa2: LaurentPoly,
    ) -> Result<Self> {
        match graph.edge(edge)? {
            EdgeKind::Internal { half_shear } if *half_shear == LaurentPoly::var(edge) => {}
            _ => return Err(Error::EdgeNotSymbolic(edge.to_string())),
        }
        Ok(ChewSubstitution { edge: edge.to_string(), kappa1, kappa2 })
    }

    pub fn edge(&self) -> &str {
        &self.edge
    }

    pub fn replacement(&self) -> LaurentPoly {
        self.kappa1.clone() * self.kappa2.clone() * LaurentPoly::monomial(Rational::one(), [(EPS, -1)])
    }

    pub fn apply(&self, expr: &LaurentPoly) -> Result<LaurentInEps> {
        if expr.variables().contains(EPS) {
            return Err(Error::EdgeNotSymbolic(format!("expression already contains {EPS}")));
        }
        let sub = BTreeMap::from([(self.edge.clone(), self.replacement())]);
        let out = expr.substitute(&sub).ok_or_else(|| Error::EdgeNotSymbolic(self.edge.clone()))?;
        Ok(LaurentInEps::from_poly(&out))
    }
}

/// A finite Laurent series in ε whose coefficients are Laurent polynomials in the
/// remaining variables.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LaurentInEps {
    coeffs: BTreeMap<i64, LaurentPoly>,
}

impl LaurentInEps {
    pub fn from_poly(p: &LaurentPoly) -> Self {
        LaurentInEps { coeffs: p.grade_by(EPS) }
    }

    pub fn coefficient(&self, k: i64) -> LaurentPoly {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &BTreeMap<i64, LaurentPoly> {
        &self.coeffs
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn to_poly(&self) -> LaurentPoly {
        self.coeffs.iter().fold(LaurentPoly::zero(), |acc, (k, c)| {
            acc + c.clone() * LaurentPoly::monomial(Rational::one(), [(EPS, *k)])
        })
    }

    /// Sets ε to a concrete value.
    pub fn specialize(&self, eps: &Rational) -> LaurentPoly {
        self.coeffs.iter().fold(LaurentPoly::zero(), |acc, (k, c)| {
            acc + c.clone() * LaurentPoly::constant(Scalar::powi(eps, *k))
        })
    }
}

/// `lim_{ε→0} ε^{rescale} · l`. The declared rescaling must equal the actual
/// order of the pole (0 when there is none).
pub fn leading_limit(l: &LaurentInEps, rescale: i64) -> Result<LaurentPoly> {
    let min = l.min_exponent().unwrap_or(0);
    if min < -1 {
        return Err(Error::DivergesFaster(min));
    }
    let actual = (-min).max(0);
    if actual != rescale {
        return Err(Error::RescalingMismatch { declared: rescale, actual });
    }
    Ok(l.coefficient(-rescale))
}

/// Rescalings used for `(x₁, x₂, x₃)` and `(G₁, …, G₄)` when the loop `p₃` is opened.
pub const X_RESCALE: [i64; 3] = [1, 1, 0];
pub const G_RESCALE: [i64; 4] = [0, 0, 1, 1];

/// Limits of the Fricke–Vogt coordinates under `sub`, rescaled per coordinate.
pub fn confluence_limits(fv: &FrickeVogt<LaurentPoly>, sub: &ChewSubstitution) -> Result<FrickeVogt<LaurentPoly>> {
    let lim = |e: &LaurentPoly, r: i64| leading_limit(&sub.apply(e)?, r);
    Ok(FrickeVogt {
        x: [lim(&fv.x[0], X_RESCALE[0])?, lim(&fv.x[1], X_RESCALE[1])?, lim(&fv.x[2], X_RESCALE[2])?],
        g: [
            lim(&fv.g[0], G_RESCALE[0])?,
            lim(&fv.g[1], G_RESCALE[1])?,
            lim(&fv.g[2], G_RESCALE[2])?,
            lim(&fv.g[3], G_RESCALE[3])?,
        ],
    })
}

/// Left side of the limiting cubic; vanishes on confluence limits.
pub fn limiting_cubic<T: Ring>(l: &FrickeVogt<T>) -> T {
    let [x1, x2, x3] = l.x.clone();
    let [g1, g2, g3, g4] = l.g.clone();
    x1.clone() * x2.clone() * x3.clone() + x1.clone() * x1.clone() + x2.clone() * x2.clone()
        - (g4.clone() * g1.clone() + g2.clone() * g3.clone()) * x1
        - (g4.clone() * g2.clone() + g1.clone() * g3.clone()) * x2
        - g4.clone() * g3.clone() * x3
        + g3.clone() * g3.clone()
        + g4.clone() * g4.clone()
        + g1 * g2 * g3 * g4
}

/// Symbolic four-holed sphere with each edge parameter named after its edge.
pub fn symbolic_four_holed_sphere() -> (FatGraph<LaurentPoly>, [PathWord; 4]) {
    let v = LaurentPoly::var;
    fatgraph::four_holed_sphere([v("s1"), v("s2"), v("s3")], [v("p1"), v("p2"), v("p3")])
        .expect("symbols are admissible")
}

/// Parameters of the sphere with two holes and one boundary carrying two cusps.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspedParams<T> {
    pub s: [T; 3],
    pub p: [T; 2],
    pub k: [T; 2],
}

impl<T: Clone> CuspedParams<T> {
    /// Values in the order of [`CUSPED_VARIABLES`].
    pub fn values(&self) -> [T; 7] {
        [
            self.k[0].clone(),
            self.k[1].clone(),
            self.p[0].clone(),
            self.p[1].clone(),
            self.s[0].clone(),
            self.s[1].clone(),
            self.s[2].clone(),
        ]
    }

    pub fn from_values(v: [T; 7]) -> Self {
        let [k1, k2, p1, p2, s1, s2, s3] = v;
        CuspedParams { s: [s1, s2, s3], p: [p1, p2], k: [k1, k2] }
    }
}

pub const CUSPED_VARIABLES: [&str; 7] = ["k1", "k2", "p1", "p2", "s1", "s2", "s3"];

pub const ARC_WORDS: [(&str, &str); 5] = [
    (
        "a",
        "X(k2) R X(s3) R X(s1) R X(p1) R X(s1) R X(s2) R X(p2) R X(s2) L X(s1) L X(p1) L X(s1) L X(s3) L X(k2)",
    ),
    ("b", "X(k2) R X(s3) R X(s1) R X(p1) R X(s1) L X(s3) L X(k2)"),
    ("c", "X(k2) R X(s3) R X(s1) R X(p1) R X(s1) R X(s2) R X(p2) R X(s2) R X(s3) L X(k2)"),
    ("d", "X(k2) R X(s3) R X(s1) R X(p1) R X(s1) R X(s2) R X(p2) R X(s2) R X(s3) R X(k1) K"),
    ("e", "X(k2) R X(k1)"),
];

/// The four-holed sphere with loop `p₃` opened into open edges `k₁, k₂`, together
/// with its five arcs between the two cusps.
pub fn cusped_sphere<T: Param>(params: CuspedParams<T>) -> Result<(FatGraph<T>, BTreeMap<String, PathWord>)> {
    let CuspedParams { s: [s1, s2, s3], p: [p1, p2], k: [k1, k2] } = params;
    let int = |id: &str, v: T| (id.to_string(), EdgeKind::Internal { half_shear: v });
    let open = |id: &str, v: T| (id.to_string(), EdgeKind::Open { half_pinning: v });
    let vtx = |id: &str, rot: [(&str, u8); 3]| Vertex {
        id: id.to_string(),
        rotation: rot.iter().map(|(e, end)| HalfEdge::new(e, *end)).collect(),
    };
    let g = FatGraph::new(
        vec![int("s1", s1), int("s2", s2), int("s3", s3), int("p1", p1), int("p2", p2), open("k1", k1), open("k2", k2)],
        vec![
            vtx("c", [("s1", 0), ("s3", 0), ("s2", 0)]),
            vtx("v1", [("s1", 1), ("p1", 0), ("p1", 1)]),
            vtx("v2", [("s2", 1), ("p2", 0), ("p2", 1)]),
            vtx("v3", [("s3", 1), ("k1", 0), ("k2", 0)]),
        ],
    )?;
    let arcs = ARC_WORDS.iter().map(|(n, w)| (n.to_string(), w.parse().expect("arc word"))).collect();
    Ok((g, arcs))
}

fn is_open_edge<T: Param>(g: &FatGraph<T>, t: Option<&Token>) -> bool {
    match t {
        Some(Token::Edge(e)) | Some(Token::EdgeInv(e)) => g.edge(e).map(|k| k.is_open()).unwrap_or(false),
        _ => false,
    }
}

/// λ-length of an arc word: `Tr(M)` if the word already ends with `K`, else `Tr(M·K)`.
pub fn lambda_length<T: Param>(g: &FatGraph<T>, name: &str, w: &PathWord) -> Result<T> {
    let toks = w.tokens();
    let body = if w.ends_with_kappa() { &toks[..toks.len() - 1] } else { toks };
    if !is_open_edge(g, body.first()) || !is_open_edge(g, body.last()) {
        return Err(Error::ArcNotCusped(name.to_string()));
    }
    let m = fatgraph::evaluate(g, w)?;
    Ok(if w.ends_with_kappa() { m.trace() } else { fatgraph::trace_k(&m) })
}

pub fn lambda_lengths<T: Param>(g: &FatGraph<T>, arcs: &BTreeMap<String, PathWord>) -> Result<BTreeMap<String, T>> {
    arcs.iter().map(|(n, w)| Ok((n.clone(), lambda_length(g, n, w)?))).collect()
}

/// Integer exponent matrix of named monomials in a fixed list of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentTable {
    pub rows: Vec<String>,
    pub variables: Vec<String>,
    pub exponents: Vec<Vec<i64>>,
}

impl ExponentTable {
    pub fn from_monomials(variables: &[&str], named: &BTreeMap<String, LaurentPoly>) -> Result<Self> {
        let mut rows = Vec::new();
        let mut exponents = Vec::new();
        for (name, p) in named {
            let (m, c) = p.as_monomial().ok_or_else(|| Error::NotMonomial(name.clone()))?;
            if *c != Rational::one() || m.keys().any(|v| !variables.contains(&v.as_str())) {
                return Err(Error::NotMonomial(name.clone()));
            }
            rows.push(name.clone());
            exponents.push(variables.iter().map(|v| m.get(*v).copied().unwrap_or(0)).collect());
        }
        Ok(ExponentTable { rows, variables: variables.iter().map(|s| s.to_string()).collect(), exponents })
    }

    fn matrix(&self) -> Matrix<Rational> {
        Matrix::from_rows(
            self.exponents.iter().map(|r| r.iter().map(|&e| Rational::from_i64(e)).collect()).collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }
}

/// Symbolic λ-lengths of the five arcs plus the two loop parameters `λ_{p₁}`, `λ_{p₂}`.
/// The arcs alone only have rank 5.
pub fn cusped_monomials() -> BTreeMap<String, LaurentPoly> {
    let v = LaurentPoly::var;
    let (g, arcs) = cusped_sphere(CuspedParams {
        s: [v("s1"), v("s2"), v("s3")],
        p: [v("p1"), v("p2")],
        k: [v("k1"), v("k2")],
    })
    .expect("symbolic cusped sphere");
    let mut out = lambda_lengths(&g, &arcs).expect("arcs are cusped");
    out.insert("p1".into(), v("p1"));
    out.insert("p2".into(), v("p2"));
    out
}

pub fn cusped_exponent_table() -> ExponentTable {
    ExponentTable::from_monomials(&CUSPED_VARIABLES, &cusped_monomials()).expect("monomial table")
}

/// Result of inverting a monomial map: exact when every root is rational.
#[derive(Clone, Debug, PartialEq)]
pub enum Inversion {
    Exact(BTreeMap<String, Rational>),
    Approx(BTreeMap<String, f64>),
}

impl Inversion {
    pub fn to_f64(&self) -> BTreeMap<String, f64> {
        match self {
            Inversion::Exact(m) => m.iter().map(|(k, v)| (k.clone(), Scalar::to_f64(v))).collect(),
            Inversion::Approx(m) => m.clone(),
        }
    }
}

fn square_inverse_data(table: &ExponentTable) -> Result<(Matrix<Rational>, i64)> {
    let a = table.matrix();
    if !a.is_square() {
        return Err(Error::SingularExponentTable);
    }
    let det = a.det_expand();
    if det.is_zero() {
        return Err(Error::SingularExponentTable);
    }
    let det = det.to_integer().try_into().map_err(|_| Error::SingularExponentTable)?;
    Ok((a.adjugate(), det))
}

fn row_values<T: Clone>(table: &ExponentTable, values: &BTreeMap<String, T>) -> Result<Vec<T>> {
    table
        .rows
        .iter()
        .map(|r| values.get(r).cloned().ok_or_else(|| Error::IncompleteAssignment(r.clone())))
        .collect()
}

/// Recovers the variables from the values of the table's monomials. Solves
/// `A·log x = log v` as `x_j = (∏ v_i^{adj(A)_{ji}})^{1/det A}`, exactly when the root is rational.
pub fn invert_monomials(values: &BTreeMap<String, Rational>, table: &ExponentTable) -> Result<Inversion> {
    let (adj, det) = square_inverse_data(table)?;
    let v = row_values(table, values)?;
    if v.iter().any(|x| !x.is_positive()) {
        return Err(Error::NonpositiveParameter("λ-length".into()));
    }
    let mut exact = BTreeMap::new();
    for (j, name) in table.variables.iter().enumerate() {
        let mut p = Rational::one();
        for (i, vi) in v.iter().enumerate() {
            let e: i64 = adj.get(j, i).to_integer().try_into().map_err(|_| Error::SingularExponentTable)?;
            p = p * Scalar::powi(vi, e);
        }
        if det < 0 {
            p = p.recip();
        }
        match rational_root(&p, det.unsigned_abs() as u32) {
            Some(r) => {
                exact.insert(name.clone(), r);
            }
            None => {
                let vf: BTreeMap<String, f64> = values.iter().map(|(k, x)| (k.clone(), Scalar::to_f64(x))).collect();
                return invert_monomials_f64(&vf, table).map(Inversion::Approx);
            }
        }
    }
    Ok(Inversion::Exact(exact))
}

pub fn invert_monomials_f64(values: &BTreeMap<String, f64>, table: &ExponentTable) -> Result<BTreeMap<String, f64>> {
    let (adj, det) = square_inverse_data(table)?;
    let v = row_values(table, values)?;
    if v.iter().any(|x| *x <= 0.0) {
        return Err(Error::NonpositiveParameter("λ-length".into()));
    }
    Ok(table
        .variables
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let log: f64 = v.iter().enumerate().map(|(i, x)| Scalar::to_f64(adj.get(j, i)) * x.ln()).sum();
            (name.clone(), (log / det as f64).exp())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use proptest::prelude::*;

    fn v(s: &str) -> LaurentPoly {
        LaurentPoly::var(s)
    }

    fn mono(c: i64, e: &[(&str, i64)]) -> LaurentPoly {
        LaurentPoly::monomial(q(c, 1), e.iter().copied())
    }

    fn sphere_setup() -> (FrickeVogt<LaurentPoly>, ChewSubstitution) {
        let (g, loops) = symbolic_four_holed_sphere();
        let fv = fatgraph::fricke_coordinates(&g, &loops).unwrap();
        let sub = ChewSubstitution::for_edge(&g, "p3", v("k1"), v("k2")).unwrap();
        (fv, sub)
    }

    #[test]
    fn g3_expansion() {
        let (fv, sub) = sphere_setup();
        let l = sub.apply(&fv.g[2]).unwrap();
        assert_eq!(l.coefficients().keys().copied().collect::<Vec<_>>(), vec![-1, 1]);
        assert_eq!(l.coefficient(-1), mono(-1, &[("k1", 1), ("k2", 1)]));
        assert_eq!(l.coefficient(1), mono(-1, &[("k1", -1), ("k2", -1)]));
        let x3 = sub.apply(&fv.x[2]).unwrap();
        assert_eq!(x3.coefficients().len(), 1);
        assert_eq!(x3.coefficient(0), fv.x[2]);
    }

    #[test]
    fn closed_form_limits() {
        let (fv, sub) = sphere_setup();
        let lim = confluence_limits(&fv, &sub).unwrap();
        let kk = v("k1") * v("k2");
        assert_eq!(lim.g[2], -kk.clone());
        assert_eq!(lim.x[1], -(kk.clone() * mono(1, &[("p1", 1), ("s1", 2), ("s3", 2)]) + kk.clone() * mono(1, &[("p1", 1), ("s1", 2)])));
        assert_eq!(lim.g[3], -(kk * mono(1, &[("p1", 1), ("p2", 1), ("s1", 2), ("s2", 2), ("s3", 2)])));
        assert_eq!(lim.x[2], fv.x[2]);
        assert_eq!(limiting_cubic(&lim), LaurentPoly::zero());
    }

    #[test]
    fn limits_depend_on_product_of_pinnings() {
        let (fv, sub) = sphere_setup();
        let lim = confluence_limits(&fv, &sub).unwrap();
        let t = BTreeMap::from([("k1".to_string(), v("k1") * v("t")), ("k2".to_string(), v("k2") * v("t").pow(-1).unwrap())]);
        for e in lim.x.iter().chain(lim.g.iter()) {
            assert_eq!(e.substitute(&t).unwrap(), *e);
        }
    }

    #[test]
    fn rescaling_validation() {
        let (fv, sub) = sphere_setup();
        let l = sub.apply(&fv.x[0]).unwrap();
        assert_eq!(leading_limit(&l, 0), Err(Error::RescalingMismatch { declared: 0, actual: 1 }));
        let sq = LaurentInEps::from_poly(&mono(1, &[(EPS, -2)]));
        assert_eq!(leading_limit(&sq, 2), Err(Error::DivergesFaster(-2)));
        let c = LaurentInEps::from_poly(&LaurentPoly::from_i64(3));
        assert_eq!(leading_limit(&c, 0).unwrap(), LaurentPoly::from_i64(3));
    }

    #[test]
    fn non_symbolic_edge() {
        let (g, _) = fatgraph::four_holed_sphere([v("s1"), v("s2"), v("s3")], [v("p1"), v("p2"), v("p3") * v("p3")]).unwrap();
        assert_eq!(ChewSubstitution::for_edge(&g, "p3", v("k1"), v("k2")), Err(Error::EdgeNotSymbolic("p3".into())));
    }

    #[test]
    fn substitution_matches_direct_evaluation() {
        let (fv, sub) = sphere_setup();
        let eps = q(1, 7);
        let env: BTreeMap<String, Rational> = [("s1", q(2, 3)), ("s2", q(5, 2)), ("s3", q(3, 1)), ("p1", q(1, 2)), ("p2", q(4, 3)), ("k1", q(2, 1)), ("k2", q(3, 5))]
            .into_iter()
            .map(|(k, x)| (k.to_string(), x))
            .collect();
        let (g, loops) = fatgraph::four_holed_sphere(
            [env["s1"].clone(), env["s2"].clone(), env["s3"].clone()],
            [env["p1"].clone(), env["p2"].clone(), env["k1"].clone() * env["k2"].clone() / eps.clone()],
        )
        .unwrap();
        let direct = fatgraph::fricke_coordinates(&g, &loops).unwrap();
        for (sym, num) in fv.x.iter().chain(fv.g.iter()).zip(direct.x.iter().chain(direct.g.iter())) {
            let via = sub.apply(sym).unwrap().specialize(&eps);
            assert_eq!(via.eval(&env).unwrap(), *num);
        }
    }

    #[test]
    fn closed_form_lambda_lengths() {
        let l = cusped_monomials();
        let kk = |a: i64, b: i64| [("k1", a), ("k2", b)];
        let with = |k: [(&'static str, i64); 2], rest: &[(&'static str, i64)]| {
            let mut e = k.to_vec();
            e.extend_from_slice(rest);
            LaurentPoly::monomial(q(1, 1), e)
        };
        assert_eq!(l["a"], with(kk(0, 2), &[("p1", 2), ("p2", 1), ("s1", 4), ("s2", 2), ("s3", 2)]));
        assert_eq!(l["b"], with(kk(0, 2), &[("p1", 1), ("s1", 2), ("s3", 2)]));
        assert_eq!(l["c"], with(kk(0, 2), &[("p1", 1), ("p2", 1), ("s1", 2), ("s2", 2), ("s3", 2)]));
        assert_eq!(l["d"], with(kk(1, 1), &[("p1", 1), ("p2", 1), ("s1", 2), ("s2", 2), ("s3", 2)]));
        assert_eq!(l["e"], with(kk(1, 1), &[]));
        assert_eq!(l["d"].clone() * l["c"].try_inv().unwrap(), mono(1, &[("k1", 1), ("k2", -1)]));
    }

    #[test]
    fn cusped_graph_shape() {
        let one = q(1, 1);
        let (g, arcs) = cusped_sphere(CuspedParams { s: [one.clone(), one.clone(), one.clone()], p: [one.clone(), one.clone()], k: [one.clone(), one] }).unwrap();
        assert_eq!(g.faces().len(), 3);
        let bad = BTreeMap::from([("x".to_string(), "X(s1) R X(k1)".parse::<PathWord>().unwrap())]);
        assert_eq!(lambda_lengths(&g, &bad), Err(Error::ArcNotCusped("x".into())));
        assert_eq!(lambda_lengths(&g, &arcs).unwrap().values().cloned().collect::<Vec<_>>(), vec![q(1, 1); 5]);
    }

    #[test]
    fn table_rank_and_trivial_inverse() {
        let t = cusped_exponent_table();
        assert_eq!(t.rank(), 7);
        let ones: BTreeMap<String, Rational> = t.rows.iter().map(|r| (r.clone(), q(1, 1))).collect();
        let Inversion::Exact(x) = invert_monomials(&ones, &t).unwrap() else { panic!() };
        assert!(x.values().all(|v| *v == q(1, 1)));
        let mut arcs_only = cusped_monomials();
        arcs_only.remove("p1");
        arcs_only.remove("p2");
        let t5 = ExponentTable::from_monomials(&CUSPED_VARIABLES, &arcs_only).unwrap();
        assert_eq!(t5.rank(), 5);
        assert_eq!(invert_monomials(&ones, &t5), Err(Error::SingularExponentTable));
    }

    #[test]
    fn irrational_root_falls_back_to_floats() {
        let t = cusped_exponent_table();
        let mut vals: BTreeMap<String, Rational> = t.rows.iter().map(|r| (r.clone(), q(1, 1))).collect();
        // e = κ₁κ₂ = 2 with d = c forces κ₁ = κ₂ = √2.
        vals.insert("e".into(), q(2, 1));
        let out = invert_monomials(&vals, &t).unwrap();
        assert!(matches!(out, Inversion::Approx(_)));
        let f = out.to_f64();
        assert!((f["k1"] - 2f64.sqrt()).abs() < 1e-12);
    }

    fn pos() -> impl Strategy<Value = Rational> {
        (1i64..=9, 1i64..=9).prop_map(|(a, b)| q(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn cubic_vanishes_numerically(xs in prop::array::uniform7(pos())) {
            let (fv, sub) = sphere_setup();
            let lim = confluence_limits(&fv, &sub).unwrap();
            let env: BTreeMap<String, Rational> = ["s1", "s2", "s3", "p1", "p2", "k1", "k2"].iter().map(|s| s.to_string()).zip(xs).collect();
            let num = FrickeVogt {
                x: lim.x.clone().map(|e| e.eval(&env).unwrap()),
                g: lim.g.clone().map(|e| e.eval(&env).unwrap()),
            };
            prop_assert_eq!(limiting_cubic(&num), q(0, 1));
        }

        #[test]
        fn inversion_round_trip(xs in prop::array::uniform7(pos())) {
            let params = CuspedParams::from_values(xs.clone());
            let (g, arcs) = cusped_sphere(params.clone()).unwrap();
            let mut vals = lambda_lengths(&g, &arcs).unwrap();
            vals.insert("p1".into(), params.p[0].clone());
            vals.insert("p2".into(), params.p[1].clone());
            let Inversion::Exact(back) = invert_monomials(&vals, &cusped_exponent_table()).unwrap() else { panic!() };
            for (name, x) in CUSPED_VARIABLES.iter().zip(xs) {
                prop_assert_eq!(&back[*name], &x);
            }
        }

        #[test]
        fn lambda_lengths_multiplicative(a in prop::array::uniform7(pos()), b in prop::array::uniform7(pos())) {
            let run = |x: [Rational; 7]| {
                let (g, arcs) = cusped_sphere(CuspedParams::from_values(x)).unwrap();
                lambda_lengths(&g, &arcs).unwrap()
            };
            let ab: [Rational; 7] = std::array::from_fn(|i| a[i].clone() * b[i].clone());
            let (la, lb, lab) = (run(a), run(b), run(ab));
            for k in la.keys() {
                prop_assert_eq!(&(la[k].clone() * lb[k].clone()), &lab[k]);
            }
        }
    }
}
