//! JSON documents for surfaces, degree maps and curves.

use serde::{Deserialize, Serialize};

use crate::curves::{CrossingWord, Step};
use crate::error::{Error, Result};
use crate::grading::DegreeMap;
use crate::surface::{EdgeKind, Quiver, TriangulatedSurface};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    id: i64,
    kind: EdgeKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangleRecord {
    id: i64,
    sides: [i64; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceDocument {
    edges: Vec<EdgeRecord>,
    triangles: Vec<TriangleRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DegreeRecord {
    arrow_id: usize,
    degree: i64,
}

/// Triangle is referenced by its label in the surface document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepRecord {
    triangle: i64,
    entry: usize,
    exit: usize,
}

fn malformed(e: serde_json::Error) -> Error {
    Error::Malformed(e.to_string())
}

pub fn parse_surface(document: &str) -> Result<TriangulatedSurface> {
    let doc: SurfaceDocument = serde_json::from_str(document).map_err(malformed)?;
    TriangulatedSurface::new(
        doc.edges.into_iter().map(|e| (e.id, e.kind)).collect(),
        doc.triangles.into_iter().map(|t| (t.id, t.sides)).collect(),
    )
}

pub fn write_surface(surface: &TriangulatedSurface) -> String {
    let (edges, triangles) = surface.to_parts();
    let doc = SurfaceDocument {
        edges: edges.into_iter().map(|(id, kind)| EdgeRecord { id, kind }).collect(),
        triangles: triangles.into_iter().map(|(id, sides)| TriangleRecord { id, sides }).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn parse_degree(document: &str, quiver: &Quiver) -> Result<DegreeMap> {
    let recs: Vec<DegreeRecord> = serde_json::from_str(document).map_err(malformed)?;
    let entries: Vec<_> = recs.into_iter().map(|r| (r.arrow_id, r.degree)).collect();
    DegreeMap::from_entries(quiver, &entries)
}

pub fn write_degree(d: &DegreeMap) -> String {
    let recs: Vec<_> = d.entries().into_iter().map(|(arrow_id, degree)| DegreeRecord { arrow_id, degree }).collect();
    serde_json::to_string_pretty(&recs).expect("serializable")
}

pub fn parse_curve(document: &str, surface: &TriangulatedSurface) -> Result<CrossingWord> {
    let recs: Vec<StepRecord> = serde_json::from_str(document).map_err(malformed)?;
    let steps = recs
        .into_iter()
        .map(|r| {
            let triangle = surface
                .triangle_by_label(r.triangle)
                .ok_or(Error::UnknownId { what: "triangle", id: r.triangle })?;
            Ok(Step { triangle, entry: r.entry, exit: r.exit })
        })
        .collect::<Result<Vec<_>>>()?;
    CrossingWord::new(surface, steps)
}

pub fn write_curve(curve: &CrossingWord, surface: &TriangulatedSurface) -> String {
    let recs: Vec<_> = curve
        .steps()
        .iter()
        .map(|s| StepRecord { triangle: surface.triangle(s.triangle).label, entry: s.entry, exit: s.exit })
        .collect();
    serde_json::to_string_pretty(&recs).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::surface::build_quiver;

    #[test]
    fn round_trips() {
        let fx = families::p2_example(1).unwrap();
        let s = parse_surface(&write_surface(&fx.surface)).unwrap();
        assert_eq!(s, fx.surface);
        let q = build_quiver(&s);
        assert_eq!(parse_degree(&write_degree(&fx.cut), &q).unwrap(), fx.cut);
        assert_eq!(parse_curve(&write_curve(&fx.a, &s), &s).unwrap(), fx.a);
    }

    #[test]
    fn unknown_fields_rejected() {
        let doc = r#"{"edges":[{"id":1,"kind":"arc","weight":2}],"triangles":[]}"#;
        assert!(matches!(parse_surface(doc), Err(Error::Malformed(_))));
        let doc = r#"{"edges":[],"triangles":[],"extra":0}"#;
        assert!(matches!(parse_surface(doc), Err(Error::Malformed(_))));
    }

    #[test]
    fn partial_degree_map() {
        let fx = families::p2_example(0).unwrap();
        let q = build_quiver(&fx.surface);
        assert_eq!(parse_degree(r#"[{"arrow_id":0,"degree":1}]"#, &q), Err(Error::MissingArrow(1)));
    }
}
