//! Point-set files (CSV and JSON) and directed edge lists.
//!
//! CSV holds one `x,y` pair per line; blank lines and everything after a `#`
//! are ignored. JSON is an object `{"points": [[x, y], ...]}`. Both writers
//! print the shortest decimal that parses back to the same `f64`, so reading
//! a written file reproduces the values exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointFormat {
    Csv,
    Json,
}

impl PointFormat {
    /// `.json` selects JSON; anything else is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => PointFormat::Json,
            _ => PointFormat::Csv,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PointsFile {
    points: Vec<[f64; 2]>,
}

pub fn parse_csv(text: &str) -> Result<PointSet> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: i + 1,
            message,
        };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(parse_err(format!("expected 'x,y', found '{line}'")));
        }
        let coord = |s: &str| -> Result<f64> {
            let v: f64 = s
                .parse()
                .map_err(|_| parse_err(format!("invalid number '{s}'")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(parse_err(format!("non-finite coordinate '{s}'")))
            }
        };
        points.push(Point::new(coord(fields[0])?, coord(fields[1])?));
    }
    PointSet::new(points)
}

pub fn to_csv(points: &PointSet) -> String {
    let mut out = String::from("# x,y\n");
    for p in points.points() {
        let _ = writeln!(out, "{},{}", p.x, p.y);
    }
    out
}

pub fn parse_json(text: &str) -> Result<PointSet> {
    let file: PointsFile = serde_json::from_str(text)?;
    PointSet::new(
        file.points
            .into_iter()
            .map(|[x, y]| Point::new(x, y))
            .collect(),
    )
}

pub fn to_json(points: &PointSet) -> String {
    let file = PointsFile {
        points: points.points().iter().map(|p| [p.x, p.y]).collect(),
    };
    let mut s = serde_json::to_string(&file).expect("finite coordinates serialize");
    s.push('\n');
    s
}

pub fn parse_points(text: &str, format: PointFormat) -> Result<PointSet> {
    match format {
        PointFormat::Csv => parse_csv(text),
        PointFormat::Json => parse_json(text),
    }
}

pub fn format_points(points: &PointSet, format: PointFormat) -> String {
    match format {
        PointFormat::Csv => to_csv(points),
        PointFormat::Json => to_json(points),
    }
}

/// Reads a point file, choosing the format from the extension.
pub fn load_points(path: &Path) -> Result<PointSet> {
    let text = std::fs::read_to_string(path)?;
    parse_points(&text, PointFormat::from_path(path))
}

pub fn save_points(path: &Path, points: &PointSet) -> Result<()> {
    std::fs::write(path, format_points(points, PointFormat::from_path(path)))?;
    Ok(())
}

/// A directed edge list with its header fields (`graph`, `metric`, `k`, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub header: BTreeMap<String, String>,
    pub edges: Vec<(usize, usize)>,
}

impl EdgeList {
    pub fn new(graph: &str, metric: &str, k: usize, edges: Vec<(usize, usize)>) -> Self {
        let header = [
            ("graph", graph.to_string()),
            ("metric", metric.to_string()),
            ("k", k.to_string()),
        ]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b))
        .collect();
        Self { header, edges }
    }

    /// A header line `# graph=.. k=.. metric=..` followed by one `u v` line
    /// per directed edge.
    pub fn to_text(&self) -> String {
        let fields: Vec<String> = self
            .header
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let mut out = format!("# {}\n", fields.join(" "));
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut header = BTreeMap::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(rest) = line.strip_prefix('#') {
                for field in rest.split_whitespace() {
                    if let Some((k, v)) = field.split_once('=') {
                        header.insert(k.to_string(), v.to_string());
                    }
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let ids: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse {
                    line: i + 1,
                    message: format!("invalid edge '{line}'"),
                })?;
            match ids[..] {
                [u, v] => edges.push((u, v)),
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("expected 'u v', found '{line}'"),
                    })
                }
            }
        }
        Ok(Self { header, edges })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip_is_exact() {
        let ps = PointSet::from_coords(&[
            (0.1, -2.5),
            (1e-300, 3.0),
            (std::f64::consts::PI, 1.0 / 3.0),
        ])
        .unwrap();
        assert_eq!(parse_csv(&to_csv(&ps)).unwrap(), ps);
        assert_eq!(parse_json(&to_json(&ps)).unwrap(), ps);
    }

    #[test]
    fn csv_comments_and_errors() {
        let ps = parse_csv("# header\n\n1,2  # trailing\n 3 , 4\n").unwrap();
        assert_eq!(ps.points(), &[Point::new(1., 2.), Point::new(3., 4.)]);
        match parse_csv("1,2\n3;4\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_csv("1,inf\n").is_err());
        assert!(parse_csv("1,2,3\n").is_err());
    }

    #[test]
    fn json_shape() {
        let ps = parse_json(r#"{"points": [[0, 0], [2.5, -1]]}"#).unwrap();
        assert_eq!(ps.len(), 2);
        assert!(parse_json(r#"{"pts": []}"#).is_err());
        assert!(parse_json(r#"{"points": [[1]]}"#).is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let e = EdgeList::new("Y4", "L2", 4, vec![(0, 1), (2, 0)]);
        let text = e.to_text();
        assert!(text.starts_with("# graph=Y4 k=4 metric=L2\n"));
        assert_eq!(EdgeList::parse(&text).unwrap(), e);
        assert!(EdgeList::parse("0 1 2\n").is_err());
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(
            PointFormat::from_path(Path::new("a.JSON")),
            PointFormat::Json
        );
        assert_eq!(PointFormat::from_path(Path::new("a.csv")), PointFormat::Csv);
        assert_eq!(PointFormat::from_path(Path::new("a")), PointFormat::Csv);
    }
}
