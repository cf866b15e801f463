//! SVG 1.1 drawings of point sets and their graphs.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::delaunay::build_del_linf;
use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet, Rect};
use crate::yao::{build_yao_l2, build_yao_linf4};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Layer {
    Points,
    Y4,
    Y4Inf,
    DelInf,
    Circumsquares,
    WitnessPath,
    QueryRect,
}

impl Layer {
    pub fn name(self) -> &'static str {
        match self {
            Layer::Points => "points",
            Layer::Y4 => "Y4",
            Layer::Y4Inf => "Y4inf",
            Layer::DelInf => "DelInf",
            Layer::Circumsquares => "circumsquares",
            Layer::WitnessPath => "witness-path",
            Layer::QueryRect => "query-rect",
        }
    }

    fn css_class(self) -> &'static str {
        match self {
            Layer::Points => "points",
            Layer::Y4 => "y4",
            Layer::Y4Inf => "y4inf",
            Layer::DelInf => "delinf",
            Layer::Circumsquares => "circumsquares",
            Layer::WitnessPath => "witness-path",
            Layer::QueryRect => "query-rect",
        }
    }
}

impl FromStr for Layer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Layer::Points,
            Layer::Y4,
            Layer::Y4Inf,
            Layer::DelInf,
            Layer::Circumsquares,
            Layer::WitnessPath,
            Layer::QueryRect,
        ]
        .into_iter()
        .find(|l| l.name().eq_ignore_ascii_case(s))
        .ok_or_else(|| Error::InvalidArgument(format!("unknown layer '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    /// Drawn bottom to top in the order given.
    pub layers: Vec<Layer>,
    /// Pixels per coordinate unit.
    pub scale: f64,
    pub stroke: f64,
    pub margin: f64,
    /// Vertex sequence for the witness-path layer.
    pub witness_path: Option<Vec<usize>>,
    /// Pair whose rectangle the query-rect layer draws.
    pub query: Option<(usize, usize)>,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            layers: vec![Layer::DelInf, Layer::Points],
            scale: 8.0,
            stroke: 1.0,
            margin: 20.0,
            witness_path: None,
            query: None,
        }
    }
}

struct Canvas {
    bounds: Rect,
    scale: f64,
    margin: f64,
}

impl Canvas {
    fn x(&self, p: Point) -> f64 {
        self.margin + (p.x - self.bounds.min.x) * self.scale
    }

    fn y(&self, p: Point) -> f64 {
        self.margin + (self.bounds.max.y - p.y) * self.scale
    }

    fn width(&self) -> f64 {
        2.0 * self.margin + self.bounds.width() * self.scale
    }

    fn height(&self) -> f64 {
        2.0 * self.margin + self.bounds.height() * self.scale
    }
}

fn line(out: &mut String, c: &Canvas, a: Point, b: Point) {
    let _ = writeln!(
        out,
        r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
        c.x(a),
        c.y(a),
        c.x(b),
        c.y(b)
    );
}

fn rect(out: &mut String, c: &Canvas, r: Rect) {
    let _ = writeln!(
        out,
        r#"    <rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}"/>"#,
        c.x(r.min),
        c.y(r.max),
        r.width() * c.scale,
        r.height() * c.scale
    );
}

pub fn render_svg(points: &PointSet, spec: &RenderSpec) -> Result<String> {
    if !(spec.scale > 0.0 && spec.stroke > 0.0 && spec.margin >= 0.0) {
        return Err(Error::InvalidArgument(
            "scale and stroke must be positive".into(),
        ));
    }
    let bounds = points.bounding_box().unwrap_or(Rect {
        min: Point::new(0.0, 0.0),
        max: Point::new(1.0, 1.0),
    });
    let c = Canvas {
        bounds,
        scale: spec.scale,
        margin: spec.margin,
    };
    let sw = spec.stroke;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.3}" height="{h:.3}" viewBox="0 0 {w:.3} {h:.3}">"#,
        w = c.width(),
        h = c.height()
    );
    let _ = writeln!(
        out,
        r#"  <rect class="canvas" x="0" y="0" width="{:.3}" height="{:.3}" fill="white"/>"#,
        c.width(),
        c.height()
    );

    let mut del = None;
    for &layer in &spec.layers {
        let class = layer.css_class();
        match layer {
            Layer::Points => {
                let _ = writeln!(out, r#"  <g class="{class}" fill="black">"#);
                for (id, p) in points.iter() {
                    let _ = writeln!(
                        out,
                        r#"    <circle id="p{id}" cx="{:.3}" cy="{:.3}" r="{:.3}"/>"#,
                        c.x(p),
                        c.y(p),
                        2.5 * sw
                    );
                }
            }
            Layer::Y4 | Layer::Y4Inf | Layer::DelInf => {
                let (colour, edges) = match layer {
                    Layer::Y4 => ("#1f77b4", build_yao_l2(points, 4)?.undirect().edges()),
                    Layer::Y4Inf => ("#d62728", build_yao_linf4(points).undirect().edges()),
                    _ => {
                        let d = del.get_or_insert(build_del_linf(points)?);
                        ("#7f7f7f", d.edges())
                    }
                };
                let _ = writeln!(
                    out,
                    r#"  <g class="{class}" stroke="{colour}" stroke-width="{sw:.3}">"#
                );
                for (u, v) in edges {
                    line(&mut out, &c, points[u], points[v]);
                }
            }
            Layer::Circumsquares => {
                let d = match &del {
                    Some(d) => d,
                    None => del.insert(build_del_linf(points)?),
                };
                let _ = writeln!(
                    out,
                    r##"  <g class="{class}" fill="none" stroke="#2ca02c" stroke-width="{:.3}" stroke-dasharray="4 3">"##,
                    0.75 * sw
                );
                for sq in d.circumsquares() {
                    rect(&mut out, &c, sq.rect());
                }
            }
            Layer::WitnessPath => {
                let path = spec.witness_path.as_ref().ok_or_else(|| {
                    Error::InvalidArgument("witness-path layer needs a path".into())
                })?;
                if let Some(&bad) = path.iter().find(|&&v| v >= points.len()) {
                    return Err(Error::InvalidArgument(format!(
                        "path vertex {bad} out of range"
                    )));
                }
                let _ = writeln!(
                    out,
                    r##"  <g class="{class}" stroke="#ff7f0e" stroke-width="{:.3}">"##,
                    3.0 * sw
                );
                for w in path.windows(2) {
                    line(&mut out, &c, points[w[0]], points[w[1]]);
                }
            }
            Layer::QueryRect => {
                let (a, b) = spec.query.ok_or_else(|| {
                    Error::InvalidArgument("query-rect layer needs a query pair".into())
                })?;
                if a >= points.len() || b >= points.len() {
                    return Err(Error::InvalidArgument("query pair out of range".into()));
                }
                let _ = writeln!(
                    out,
                    r##"  <g class="{class}" fill="#9467bd" fill-opacity="0.15" stroke="#9467bd" stroke-width="{sw:.3}">"##
                );
                rect(&mut out, &c, Rect::spanned(points[a], points[b]));
            }
        }
        let _ = writeln!(out, "  </g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
