//! Half-plane scenes and their SVG rendering.

use std::fmt::Write as _;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fatgraph::{evaluate, pair_of_pants};
use crate::halfplane::{BoundaryPoint, FixedPoints, MobiusMap};
use crate::schema::Tag;

/// A point of ℝ ∪ {∞}; written as a JSON number or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ideal {
    At(f64),
    Inf,
}

impl Ideal {
    fn from_boundary(p: &BoundaryPoint<f64>) -> Self {
        match p {
            BoundaryPoint::Finite(x) => Ideal::At(*x),
            BoundaryPoint::Infinity => Ideal::Inf,
        }
    }
    fn to_boundary(self) -> BoundaryPoint<f64> {
        match self {
            Ideal::At(x) => BoundaryPoint::Finite(x),
            Ideal::Inf => BoundaryPoint::Infinity,
        }
    }
    /// Homogeneous coordinates.
    fn hom(self) -> (f64, f64) {
        match self {
            Ideal::At(x) => (x, 1.0),
            Ideal::Inf => (1.0, 0.0),
        }
    }
}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ideal::At(x) => s.serialize_f64(*x),
            Ideal::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Ideal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => Ok(Ideal::At(n.as_f64().ok_or_else(|| de::Error::custom("bad number"))?)),
            serde_json::Value::String(s) if s == "inf" => Ok(Ideal::Inf),
            v => Err(de::Error::custom(format!("expected a number or \"inf\", got {v}"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Style {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub dashed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SceneElement {
    Geodesic {
        from: Ideal,
        to: Ideal,
        #[serde(default)]
        style: Style,
    },
    /// `size` is the diameter of a finite-based horocycle, or the height of one at ∞.
    Horocycle {
        base: Ideal,
        size: f64,
        #[serde(default)]
        style: Style,
    },
    /// A Euclidean circle.
    Circle {
        center: [f64; 2],
        radius: f64,
        #[serde(default)]
        style: Style,
    },
    Point {
        at: [f64; 2],
        #[serde(default)]
        style: Style,
    },
    /// Ideal polygon; consecutive vertices are joined by geodesics.
    Polygon {
        vertices: Vec<Ideal>,
        #[serde(default)]
        style: Style,
    },
}

impl SceneElement {
    pub fn geodesic(from: Ideal, to: Ideal, color: &str, label: Option<&str>, dashed: bool) -> Self {
        SceneElement::Geodesic {
            from,
            to,
            style: Style { color: Some(color.to_string()), label: label.map(str::to_string), dashed },
        }
    }

    fn rank(&self) -> u8 {
        match self {
            SceneElement::Polygon { .. } => 0,
            SceneElement::Circle { .. } => 1,
            SceneElement::Horocycle { .. } => 2,
            SceneElement::Geodesic { .. } => 3,
            SceneElement::Point { .. } => 4,
        }
    }

    fn style(&self) -> &Style {
        match self {
            SceneElement::Geodesic { style, .. }
            | SceneElement::Horocycle { style, .. }
            | SceneElement::Circle { style, .. }
            | SceneElement::Point { style, .. }
            | SceneElement::Polygon { style, .. } => style,
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = |xs: &[f64]| xs.iter().all(|x| x.is_finite());
        let ideal = |p: &Ideal| !matches!(p, Ideal::At(x) if !x.is_finite());
        let ok = match self {
            SceneElement::Geodesic { from, to, .. } => ideal(from) && ideal(to) && from != to,
            SceneElement::Horocycle { base, size, .. } => ideal(base) && size.is_finite() && *size > 0.0,
            SceneElement::Circle { center, radius, .. } => finite(center) && radius.is_finite() && *radius > 0.0,
            SceneElement::Point { at, .. } => finite(at),
            SceneElement::Polygon { vertices, .. } => {
                vertices.len() >= 3 && vertices.iter().all(ideal) && (0..vertices.len()).all(|i| vertices[i] != vertices[(i + 1) % vertices.len()])
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::DegenerateInput(format!("scene element {self:?}")))
        }
    }
}

/// Visible region `[xmin, xmax] × [0, ymax]` of the half-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl Default for Window {
    fn default() -> Self {
        Window { xmin: -4.0, xmax: 4.0, ymax: 4.0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    pub schema: Tag,
    #[serde(default)]
    pub window: Window,
    #[serde(default)]
    pub elements: Vec<SceneElement>,
}

impl Scene {
    pub fn new(elements: Vec<SceneElement>) -> Self {
        Scene { schema: Tag, window: Window::default(), elements }
    }
}

/// Pixels per unit.
const SCALE: f64 = 100.0;

fn num(x: f64) -> String {
    let s = format!("{:.3}", x * SCALE);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn stroke(style: &Style) -> String {
    let mut out = format!(" stroke=\"{}\" fill=\"none\"", escape(style.color.as_deref().unwrap_or("black")));
    if style.dashed {
        out.push_str(" stroke-dasharray=\"8 6\"");
    }
    out
}

/// SVG path data for the geodesic from `p` to `q`; `first` starts a new subpath.
fn geodesic_path(p: Ideal, q: Ideal, w: &Window, first: bool) -> String {
    let start = |x: f64, y: f64| if first { format!("M {} {} ", num(x), num(-y)) } else { String::new() };
    match (p, q) {
        (Ideal::At(a), Ideal::At(b)) => {
            let r = (a - b).abs() / 2.0;
            let sweep = if a < b { 1 } else { 0 };
            format!("{}A {} {} 0 0 {} {} 0", start(a, 0.0), num(r), num(r), sweep, num(b))
        }
        (Ideal::At(a), Ideal::Inf) => format!("{}L {} {}", start(a, 0.0), num(a), num(-w.ymax)),
        (Ideal::Inf, Ideal::At(b)) => format!("{}L {} 0", start(b, w.ymax), num(b)),
        (Ideal::Inf, Ideal::Inf) => String::new(),
    }
}

fn render_element(e: &SceneElement, w: &Window) -> String {
    let mut out = String::new();
    match e {
        SceneElement::Geodesic { from, to, style } => {
            let _ = write!(out, "<path d=\"{}\"{}/>", geodesic_path(*from, *to, w, true), stroke(style));
        }
        SceneElement::Horocycle { base, size, style } => match base {
            Ideal::At(x) => {
                let r = size / 2.0;
                let _ = write!(out, "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"{}/>", num(*x), num(-r), num(r), stroke(style));
            }
            Ideal::Inf => {
                let _ = write!(
                    out,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"{}/>",
                    num(w.xmin),
                    num(-size),
                    num(w.xmax),
                    num(-size),
                    stroke(style)
                );
            }
        },
        SceneElement::Circle { center, radius, style } => {
            let _ = write!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"{}/>",
                num(center[0]),
                num(-center[1]),
                num(*radius),
                stroke(style)
            );
        }
        SceneElement::Point { at, style } => {
            let color = escape(style.color.as_deref().unwrap_or("black"));
            let _ = write!(out, "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{color}\"/>", num(at[0]), num(-at[1]));
        }
        SceneElement::Polygon { vertices, style } => {
            let mut d = String::new();
            let k = vertices.len();
            for i in 0..k {
                let (p, q) = (vertices[i], vertices[(i + 1) % k]);
                if i > 0 {
                    d.push(' ');
                }
                // A side ending at ∞ continues from the top of the window.
                let restart = i == 0 || vertices[i] == Ideal::Inf;
                d.push_str(&geodesic_path(p, q, w, restart));
            }
            let fill = style.color.as_deref().map(escape).unwrap_or_else(|| "lightblue".into());
            let _ = write!(out, "<path d=\"{d}\" fill=\"{fill}\" fill-opacity=\"0.4\" stroke=\"none\"/>");
        }
    }
    if let Some(label) = &e.style().label {
        let (x, y) = label_anchor(e, w);
        let _ = write!(out, "<text x=\"{}\" y=\"{}\" font-size=\"14\">{}</text>", num(x), num(-y), escape(label));
    }
    out
}

fn label_anchor(e: &SceneElement, w: &Window) -> (f64, f64) {
    match e {
        SceneElement::Geodesic { from, to, .. } => match (from, to) {
            (Ideal::At(a), Ideal::At(b)) => ((a + b) / 2.0, (a - b).abs() / 2.0),
            (Ideal::At(a), Ideal::Inf) | (Ideal::Inf, Ideal::At(a)) => (*a, w.ymax * 0.9),
            _ => (0.0, 0.0),
        },
        SceneElement::Horocycle { base: Ideal::At(x), size, .. } => (*x, *size),
        SceneElement::Horocycle { size, .. } => (w.xmin, *size),
        SceneElement::Circle { center, radius, .. } => (center[0], center[1] + radius),
        SceneElement::Point { at, .. } => (at[0], at[1]),
        SceneElement::Polygon { vertices, .. } => {
            let xs: Vec<f64> = vertices.iter().filter_map(|v| if let Ideal::At(x) = v { Some(*x) } else { None }).collect();
            (xs.iter().sum::<f64>() / xs.len().max(1) as f64, 0.1)
        }
    }
}

/// Renders a scene. Output depends only on the scene: elements are drawn in a
/// fixed order (fills, circles, horocycles, geodesics, points) and sorted within
/// each kind by their markup.
pub fn render_svg(scene: &Scene) -> Result<String> {
    let w = &scene.window;
    if !(w.xmin < w.xmax && w.ymax > 0.0) {
        return Err(Error::DegenerateInput("empty window".into()));
    }
    for e in &scene.elements {
        e.validate()?;
    }
    let mut items: Vec<(u8, String)> = scene.elements.iter().map(|e| (e.rank(), render_element(e, w))).collect();
    items.sort();
    let mut out = String::new();
    let (x0, y0) = (num(w.xmin), num(-w.ymax));
    let (wd, ht) = (num(w.xmax - w.xmin), num(w.ymax));
    let _ = writeln!(out, "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{x0} {y0} {wd} {ht}\" width=\"{wd}\" height=\"{ht}\">");
    let _ = writeln!(out, "<rect x=\"{x0}\" y=\"{y0}\" width=\"{wd}\" height=\"{ht}\" fill=\"white\"/>");
    let _ = writeln!(out, "<g id=\"axes\" stroke=\"gray\" stroke-width=\"1\">");
    let _ = writeln!(out, "<line x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"0\"/>", num(w.xmin), num(w.xmax));
    if w.xmin <= 0.0 && w.xmax >= 0.0 {
        let _ = writeln!(out, "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"{y0}\" stroke-dasharray=\"2 4\"/>");
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "<g id=\"elements\" stroke-width=\"2\">");
    for (_, s) in items {
        let _ = writeln!(out, "{s}");
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

/// Geodesic orthogonal to both geodesics with endpoints `{a, b}` and `{c, d}`: its
/// endpoints are the fixed points of the involution swapping `a ↔ b` and `c ↔ d`.
pub fn common_perpendicular(a: Ideal, b: Ideal, c: Ideal, d: Ideal) -> Result<(Ideal, Ideal)> {
    // Involution z ↦ (αz + β)/(γz − α) swaps z, w iff γzw − α(z + w) − β = 0.
    let row = |p: Ideal, q: Ideal| {
        let ((x1, w1), (x2, w2)) = (p.hom(), q.hom());
        [-(x1 * w2 + x2 * w1), -(w1 * w2), x1 * x2]
    };
    let (r1, r2) = (row(a, b), row(c, d));
    let cross = [r1[1] * r2[2] - r1[2] * r2[1], r1[2] * r2[0] - r1[0] * r2[2], r1[0] * r2[1] - r1[1] * r2[0]];
    let [alpha, beta, gamma] = cross;
    let scale = cross.iter().fold(0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return Err(Error::DegenerateInput("geodesics share an endpoint".into()));
    }
    let (alpha, beta, gamma) = (alpha / scale, beta / scale, gamma / scale);
    // Fixed points: γz² − 2αz − β = 0.
    let disc = alpha * alpha + beta * gamma;
    if disc <= 0.0 {
        return Err(Error::DegenerateInput("geodesics intersect".into()));
    }
    if gamma.abs() < 1e-14 {
        return Ok((Ideal::At(-beta / (2.0 * alpha)), Ideal::Inf));
    }
    let s = disc.sqrt();
    let (r1, r2) = ((alpha - s) / gamma, (alpha + s) / gamma);
    Ok((Ideal::At(r1.min(r2)), Ideal::At(r1.max(r2))))
}

fn image(m: &MobiusMap<f64>, (p, q): (Ideal, Ideal)) -> (Ideal, Ideal) {
    (Ideal::from_boundary(&m.apply_boundary(&p.to_boundary())), Ideal::from_boundary(&m.apply_boundary(&q.to_boundary())))
}

/// The three holonomies of the pair of pants at shear coordinates `s`
/// (half-shears `e^{s/2}`).
pub fn pants_maps(s: [f64; 3]) -> Result<[MobiusMap<f64>; 3]> {
    let [l1, l2, l3] = s.map(|x| (x / 2.0).exp());
    let (g, words) = pair_of_pants(l1, l2, l3)?;
    let m = |i: usize| MobiusMap::from_matrix(&evaluate(&g, &words[i])?);
    Ok([m(0)?, m(1)?, m(2)?])
}

/// Axis endpoints of a hyperbolic map, ascending with ∞ last.
pub fn axis(m: &MobiusMap<f64>) -> Result<(Ideal, Ideal)> {
    match m.fixed_points()? {
        FixedPoints::Boundary(v) if v.len() == 2 => Ok((Ideal::from_boundary(&v[0]), Ideal::from_boundary(&v[1]))),
        _ => Err(Error::DegenerateInput("map is not hyperbolic".into())),
    }
}

/// The pair-of-pants picture: the invariant axes of `γ₁, γ₂, γ₃`, the common
/// perpendicular `g₁₂` of the first two axes with its `γ₁`-image, and `g₂₃` with
/// its `γ₃⁻¹`-image.
pub fn pants_scene(s: [f64; 3]) -> Result<Scene> {
    let maps = pants_maps(s)?;
    let axes = [axis(&maps[0])?, axis(&maps[1])?, axis(&maps[2])?];
    let mut elements: Vec<SceneElement> = axes
        .iter()
        .enumerate()
        .map(|(i, (p, q))| SceneElement::geodesic(*p, *q, "black", Some(&format!("axis {}", i + 1)), false))
        .collect();
    let g12 = common_perpendicular(axes[0].0, axes[0].1, axes[1].0, axes[1].1)?;
    let g23 = common_perpendicular(axes[1].0, axes[1].1, axes[2].0, axes[2].1)?;
    let g12_image = image(&maps[0], g12);
    let g23_image = image(&maps[2].inverse(), g23);
    elements.push(SceneElement::geodesic(g12.0, g12.1, "green", None, false));
    elements.push(SceneElement::geodesic(g12_image.0, g12_image.1, "green", None, true));
    elements.push(SceneElement::geodesic(g23.0, g23.1, "purple", None, false));
    elements.push(SceneElement::geodesic(g23_image.0, g23_image.1, "purple", None, true));
    Ok(Scene::new(elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema;

    fn close(p: Ideal, x: f64) -> bool {
        matches!(p, Ideal::At(y) if (y - x).abs() < 1e-9)
    }

    #[test]
    fn pants_axes() {
        let maps = pants_maps([2f64.ln(), 0.0, 3f64.ln()]).unwrap();
        let (a1, b1) = axis(&maps[0]).unwrap();
        assert!(close(a1, -3.0) && b1 == Ideal::Inf);
        let (a2, b2) = axis(&maps[1]).unwrap();
        assert!(close(a2, 0.0) && close(b2, 5.0 / 3.0));
        let (a3, b3) = axis(&maps[2]).unwrap();
        assert!(close(a3, -1.0) && close(b3, -2.0 / 3.0));
    }

    /// Harmonic pairs: cr(p, q; a, b) = −1.
    fn harmonic(p: Ideal, q: Ideal, a: Ideal, b: Ideal) -> bool {
        let det = |u: Ideal, v: Ideal| {
            let ((x1, w1), (x2, w2)) = (u.hom(), v.hom());
            x1 * w2 - x2 * w1
        };
        let cr = det(p, a) * det(q, b) / (det(p, b) * det(q, a));
        (cr + 1.0).abs() < 1e-9
    }

    #[test]
    fn perpendiculars() {
        let (a, b, c, d) = (Ideal::At(-3.0), Ideal::Inf, Ideal::At(0.0), Ideal::At(5.0 / 3.0));
        let (p, q) = common_perpendicular(a, b, c, d).unwrap();
        assert!(harmonic(p, q, a, b) && harmonic(p, q, c, d));
        // Concentric arcs about 0 have the imaginary axis as common perpendicular.
        let (p, q) = common_perpendicular(Ideal::At(-1.0), Ideal::At(1.0), Ideal::At(-2.0), Ideal::At(2.0)).unwrap();
        assert!(close(p, 0.0) && q == Ideal::Inf);
        assert!(common_perpendicular(Ideal::At(-1.0), Ideal::At(1.0), Ideal::At(0.0), Ideal::At(2.0)).is_err());
    }

    #[test]
    fn empty_scene_has_axes_only() {
        let svg = render_svg(&Scene::new(vec![])).unwrap();
        assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-400 -400 800 400\""));
        assert!(svg.contains("<g id=\"axes\""));
        assert!(!svg.contains("<path"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn arcs_are_semicircles() {
        let svg = render_svg(&Scene::new(vec![SceneElement::geodesic(Ideal::At(-1.0), Ideal::At(2.0), "red", Some("a<b"), false)])).unwrap();
        assert!(svg.contains("<path d=\"M -100 0 A 150 150 0 0 1 200 0\" stroke=\"red\" fill=\"none\"/>"));
        assert!(svg.contains(">a&lt;b</text>"));
    }

    #[test]
    fn order_is_canonical() {
        let scene = pants_scene([2f64.ln(), 0.0, 3f64.ln()]).unwrap();
        let mut reversed = scene.clone();
        reversed.elements.reverse();
        let a = render_svg(&scene).unwrap();
        assert_eq!(a, render_svg(&reversed).unwrap());
        assert_eq!(a, render_svg(&scene).unwrap());
        assert_eq!(a.matches("<path").count(), 7);
    }

    #[test]
    fn scene_json_round_trip() {
        let mut scene = pants_scene([2f64.ln(), 0.0, 3f64.ln()]).unwrap();
        scene.elements.push(SceneElement::Horocycle { base: Ideal::Inf, size: 2.0, style: Style::default() });
        scene.elements.push(SceneElement::Polygon { vertices: vec![Ideal::At(0.0), Ideal::At(1.0), Ideal::Inf], style: Style::default() });
        scene.elements.push(SceneElement::Point { at: [0.0, 1.0], style: Style::default() });
        scene.elements.push(SceneElement::Circle { center: [0.0, 2.0], radius: 1.0, style: Style::default() });
        let text = schema::to_string(&scene);
        assert!(text.contains("\"inf\""));
        let back: Scene = schema::from_str(&text).unwrap();
        assert_eq!(back, scene);
        render_svg(&back).unwrap();
        let bad = r#"{"schema":"teichkit/1","elements":[{"kind":"blob"}]}"#;
        assert!(matches!(schema::from_str::<Scene>(bad), Err(schema::DecodeError::Schema { .. })));
        let degenerate = Scene::new(vec![SceneElement::geodesic(Ideal::At(1.0), Ideal::At(1.0), "red", None, false)]);
        assert!(render_svg(&degenerate).is_err());
    }
}
