//! Perimeter ingestion from SVG path data or JSON vertex lists.

use serde::{Deserialize, Serialize};
use svgtypes::{PathParser, PathSegment};

use super::{GeometryError, Point, Polygon};
use crate::Scalar;

/// Encoding of a perimeter source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerimeterFormat {
    /// An SVG document with a single `<path>`, or bare path data.
    SvgPath,
    /// `{"units": "px"|"m", "vertices": [[x, y], ...]}` or a bare vertex array.
    JsonVertices,
}

impl PerimeterFormat {
    /// Guesses the format from a file name extension.
    pub fn from_extension(path: &str) -> Option<Self> {
        let lower = path.to_ascii_lowercase();
        if lower.ends_with(".svg") {
            Some(Self::SvgPath)
        } else if lower.ends_with(".json") {
            Some(Self::JsonVertices)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Px,
    M,
}

/// On-disk JSON perimeter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerimeterFile {
    #[serde(default)]
    pub units: Units,
    pub vertices: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonPerimeter {
    Tagged(PerimeterFile),
    Bare(Vec<[f64; 2]>),
}

/// Parses a perimeter into a validated polygon in source units. Vertex order
/// is preserved.
pub fn parse_perimeter<T: Scalar>(
    source: &str,
    format: PerimeterFormat,
) -> Result<Polygon<T>, GeometryError> {
    let raw = match format {
        PerimeterFormat::JsonVertices => parse_json(source)?,
        PerimeterFormat::SvgPath => parse_svg(source)?,
    };
    let vertices = raw
        .into_iter()
        .map(|[x, y]| {
            Ok(Point::new(
                T::from_f64(x).ok_or_else(|| GeometryError::MalformedSource("coordinate".into()))?,
                T::from_f64(y).ok_or_else(|| GeometryError::MalformedSource("coordinate".into()))?,
            ))
        })
        .collect::<Result<Vec<_>, GeometryError>>()?;
    Polygon::new(vertices)
}

fn parse_json(source: &str) -> Result<Vec<[f64; 2]>, GeometryError> {
    let parsed: JsonPerimeter =
        serde_json::from_str(source).map_err(|e| GeometryError::MalformedSource(e.to_string()))?;
    Ok(match parsed {
        JsonPerimeter::Tagged(f) => f.vertices,
        JsonPerimeter::Bare(v) => v,
    })
}

fn parse_svg(source: &str) -> Result<Vec<[f64; 2]>, GeometryError> {
    let trimmed = source.trim_start();
    if !trimmed.starts_with('<') {
        return parse_path_data(source);
    }
    let doc =
        roxmltree::Document::parse(source).map_err(|e| GeometryError::MalformedSource(e.to_string()))?;
    let mut paths = doc.descendants().filter(|n| n.is_element() && n.tag_name().name() == "path");
    let path = paths.next().ok_or_else(|| GeometryError::MalformedSource("no <path> element".into()))?;
    if paths.next().is_some() {
        return Err(GeometryError::MalformedSource("more than one <path> element".into()));
    }
    let d = path
        .attribute("d")
        .ok_or_else(|| GeometryError::MalformedSource("<path> has no d attribute".into()))?;
    parse_path_data(d)
}

/// Walks M/L/H/V/Z path data (absolute and relative) into a vertex list.
fn parse_path_data(d: &str) -> Result<Vec<[f64; 2]>, GeometryError> {
    let mut out: Vec<[f64; 2]> = Vec::new();
    let (mut cx, mut cy) = (0.0f64, 0.0f64);
    let mut started = false;
    let mut closed = false;
    for seg in PathParser::from(d) {
        let seg = seg.map_err(|e| GeometryError::MalformedSource(e.to_string()))?;
        if closed {
            return Err(GeometryError::MalformedSource("path contains more than one subpath".into()));
        }
        match seg {
            PathSegment::MoveTo { abs, x, y } => {
                if started {
                    return Err(GeometryError::MalformedSource("path contains more than one subpath".into()));
                }
                // A leading relative moveto is absolute.
                let _ = abs;
                (cx, cy) = (x, y);
                started = true;
            }
            PathSegment::LineTo { abs, x, y } => {
                require_start(started)?;
                (cx, cy) = if abs { (x, y) } else { (cx + x, cy + y) };
            }
            PathSegment::HorizontalLineTo { abs, x } => {
                require_start(started)?;
                cx = if abs { x } else { cx + x };
            }
            PathSegment::VerticalLineTo { abs, y } => {
                require_start(started)?;
                cy = if abs { y } else { cy + y };
            }
            PathSegment::ClosePath { .. } => {
                require_start(started)?;
                closed = true;
                continue;
            }
            other => return Err(GeometryError::UnsupportedCommand(command_letter(&other))),
        }
        out.push([cx, cy]);
    }
    if out.is_empty() {
        return Err(GeometryError::MalformedSource("empty path data".into()));
    }
    Ok(out)
}

fn require_start(started: bool) -> Result<(), GeometryError> {
    if started {
        Ok(())
    } else {
        Err(GeometryError::MalformedSource("path data must begin with a moveto".into()))
    }
}

fn command_letter(seg: &PathSegment) -> char {
    let (abs, c) = match *seg {
        PathSegment::CurveTo { abs, .. } => (abs, 'C'),
        PathSegment::SmoothCurveTo { abs, .. } => (abs, 'S'),
        PathSegment::Quadratic { abs, .. } => (abs, 'Q'),
        PathSegment::SmoothQuadratic { abs, .. } => (abs, 'T'),
        PathSegment::EllipticalArc { abs, .. } => (abs, 'A'),
        _ => (true, '?'),
    };
    if abs {
        c
    } else {
        c.to_ascii_lowercase()
    }
}
