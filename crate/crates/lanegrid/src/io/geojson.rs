//! GeoJSON field ingestion and emission.
//!
//! Coordinates are planar metres (a projected system such as UTM), not
//! longitude/latitude — the format is borrowed for its ring structure, and
//! no reprojection happens here. A field is either a single `Polygon`
//! (exterior ring = contour, interior rings = obstacles), a `Feature`
//! wrapping one, or a `FeatureCollection` of polygons, in which the polygon
//! enclosing the largest area is the contour and every other polygon an
//! obstacle.

use std::path::Path;

use geojson::{Feature, GeoJson, Value};

use crate::error::InputError;
use crate::geometry::{Point, Ring};
use crate::headland::FieldGeometry;

/// Read and parse a field from a GeoJSON file. The field name comes from
/// the feature's `name` property when present, otherwise the file stem.
pub fn load_field(path: &Path) -> Result<FieldGeometry, InputError> {
    let text = std::fs::read_to_string(path)?;
    let fallback = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("field");
    parse_field(&text, fallback)
}

/// Parse a field from GeoJSON text.
pub fn parse_field(text: &str, fallback_name: &str) -> Result<FieldGeometry, InputError> {
    let gj: GeoJson = text
        .parse()
        .map_err(|e: geojson::Error| InputError::Geojson(e.to_string()))?;
    match gj {
        GeoJson::Geometry(g) => {
            let (contour, holes) = polygon_rings(&g.value)?;
            build(fallback_name, contour, holes)
        }
        GeoJson::Feature(f) => {
            let name = feature_name(&f).unwrap_or_else(|| fallback_name.to_string());
            let geom = f
                .geometry
                .as_ref()
                .ok_or_else(|| InputError::Schema("feature has no geometry".into()))?;
            let (contour, holes) = polygon_rings(&geom.value)?;
            build(&name, contour, holes)
        }
        GeoJson::FeatureCollection(fc) => {
            // Gather every polygon with its rings; the largest area is the
            // contour, the rest (plus all interior rings) are obstacles.
            let mut polys: Vec<(Option<String>, Vec<Point>, Vec<Vec<Point>>)> = Vec::new();
            for f in &fc.features {
                let geom = f
                    .geometry
                    .as_ref()
                    .ok_or_else(|| InputError::Schema("feature has no geometry".into()))?;
                let (outer, holes) = polygon_rings(&geom.value)?;
                polys.push((feature_name(f), outer, holes));
            }
            if polys.is_empty() {
                return Err(InputError::Schema("no polygon features".into()));
            }
            let contour_at = polys
                .iter()
                .enumerate()
                .max_by(|a, b| {
                    ring_area_abs(&a.1 .1).total_cmp(&ring_area_abs(&b.1 .1))
                })
                .map(|(i, _)| i)
                .expect("non-empty");
            let (name, contour, mut obstacles) = polys.remove(contour_at);
            for (_, outer, holes) in polys {
                obstacles.push(outer);
                obstacles.extend(holes);
            }
            let name = name.unwrap_or_else(|| fallback_name.to_string());
            build(&name, contour, obstacles)
        }
    }
}

fn feature_name(f: &Feature) -> Option<String> {
    f.properties
        .as_ref()
        .and_then(|p| p.get("name"))
        .and_then(|v| v.as_str())
        .map(str::to_string)
}

/// Extract exterior and interior rings from a Polygon geometry value.
fn polygon_rings(value: &Value) -> Result<(Vec<Point>, Vec<Vec<Point>>), InputError> {
    let rings = match value {
        Value::Polygon(rings) => rings,
        other => {
            return Err(InputError::Schema(format!(
                "expected a Polygon geometry, got {}",
                other.type_name()
            )))
        }
    };
    if rings.is_empty() {
        return Err(InputError::Schema("polygon has no rings".into()));
    }
    let exterior = ring_points(&rings[0])?;
    let holes = rings[1..]
        .iter()
        .map(|r| ring_points(r))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((exterior, holes))
}

/// Validate one GeoJSON ring and convert it to points. The closing
/// duplicate vertex is required here and dropped during ring construction.
fn ring_points(ring: &[Vec<f64>]) -> Result<Vec<Point>, InputError> {
    if ring.len() < 4 {
        return Err(InputError::Schema(format!(
            "ring has {} positions; a closed ring needs at least 4",
            ring.len()
        )));
    }
    for pos in ring {
        if pos.len() < 2 {
            return Err(InputError::Schema("position with fewer than 2 coordinates".into()));
        }
        if !pos[0].is_finite() || !pos[1].is_finite() {
            return Err(InputError::Schema("non-finite coordinate".into()));
        }
    }
    let (first, last) = (&ring[0], &ring[ring.len() - 1]);
    if first[0] != last[0] || first[1] != last[1] {
        return Err(InputError::Schema(
            "unclosed ring: the last vertex must repeat the first".into(),
        ));
    }
    Ok(ring.iter().map(|pos| Point::new(pos[0], pos[1])).collect())
}

fn ring_area_abs(points: &[Point]) -> f64 {
    let n = points.len();
    let mut acc = 0.0;
    for i in 0..n {
        let (a, b) = (points[i], points[(i + 1) % n]);
        acc += a.x * b.y - b.x * a.y;
    }
    (acc / 2.0).abs()
}

fn build(
    name: &str,
    contour: Vec<Point>,
    holes: Vec<Vec<Point>>,
) -> Result<FieldGeometry, InputError> {
    let contour = Ring::new(contour)?;
    let obstacles = holes
        .into_iter()
        .map(Ring::new)
        .collect::<Result<Vec<_>, _>>()?;
    FieldGeometry::new(name, contour, obstacles)
}

/// Encode a field as a GeoJSON Feature: one Polygon whose exterior ring is
/// the contour (counter-clockwise) and whose interior rings are the
/// obstacles (clockwise, per the format's winding convention), with the
/// field name as a property.
pub fn field_to_geojson(field: &FieldGeometry) -> String {
    let close = |pts: Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        let mut out = pts;
        if let Some(first) = out.first().cloned() {
            out.push(first);
        }
        out
    };
    let mut rings: Vec<Vec<Vec<f64>>> = Vec::new();
    rings.push(close(
        field.contour.points().iter().map(|p| vec![p.x, p.y]).collect(),
    ));
    for ob in &field.obstacles {
        rings.push(close(
            ob.points().iter().rev().map(|p| vec![p.x, p.y]).collect(),
        ));
    }
    let mut properties = geojson::JsonObject::new();
    properties.insert("name".into(), field.name.clone().into());
    properties.insert(
        "area_ha".into(),
        serde_json::Value::from((field.area_ha() * 100.0).round() / 100.0),
    );
    let feature = Feature {
        bbox: None,
        geometry: Some(geojson::Geometry::new(Value::Polygon(rings))),
        id: None,
        properties: Some(properties),
        foreign_members: None,
    };
    GeoJson::Feature(feature).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygon_with_hole_becomes_field_with_obstacle() {
        let text = r#"{"type":"Polygon","coordinates":[
            [[0,0],[200,0],[200,150],[0,150],[0,0]],
            [[90,65],[110,65],[110,85],[90,85],[90,65]]
        ]}"#;
        let field = parse_field(text, "poly").unwrap();
        assert_eq!(field.name, "poly");
        assert_eq!(field.contour.len(), 4);
        assert_eq!(field.obstacles.len(), 1);
        assert_eq!(field.obstacles[0].len(), 4);
    }

    #[test]
    fn unclosed_ring_is_rejected() {
        let text = r#"{"type":"Polygon","coordinates":[
            [[0,0],[200,0],[200,150],[0,150]]
        ]}"#;
        let err = parse_field(text, "x").unwrap_err();
        assert!(
            matches!(&err, InputError::Schema(m) if m.contains("unclosed ring")),
            "{err}"
        );
    }

    #[test]
    fn obstacle_crossing_the_contour_is_rejected() {
        // The "hole" pokes through the right contour edge.
        let text = r#"{"type":"Polygon","coordinates":[
            [[0,0],[200,0],[200,150],[0,150],[0,0]],
            [[180,60],[220,60],[220,90],[180,90],[180,60]]
        ]}"#;
        let err = parse_field(text, "x").unwrap_err();
        assert!(
            matches!(err, InputError::ObstacleOutsideField { index: 0 }),
            "{err}"
        );
    }

    #[test]
    fn malformed_json_is_a_distinct_error() {
        let err = parse_field("{not json", "x").unwrap_err();
        assert!(matches!(err, InputError::Geojson(_)), "{err}");
    }

    #[test]
    fn feature_collection_largest_polygon_is_the_contour() {
        let text = r#"{"type":"FeatureCollection","features":[
            {"type":"Feature","properties":{"name":"pond"},"geometry":
                {"type":"Polygon","coordinates":[[[90,65],[110,65],[110,85],[90,85],[90,65]]]}},
            {"type":"Feature","properties":{"name":"home-field"},"geometry":
                {"type":"Polygon","coordinates":[[[0,0],[200,0],[200,150],[0,150],[0,0]]]}}
        ]}"#;
        let field = parse_field(text, "fallback").unwrap();
        assert_eq!(field.name, "home-field");
        assert_eq!(field.obstacles.len(), 1);
        let ob = &field.obstacles[0];
        assert!((ob.area() - 400.0).abs() < 1e-9);
    }

    #[test]
    fn emitted_field_parses_back_identically() {
        let text = r#"{"type":"Polygon","coordinates":[
            [[0,0],[200,0],[200,150],[0,150],[0,0]],
            [[90,65],[110,65],[110,85],[90,85],[90,65]]
        ]}"#;
        let field = parse_field(text, "round").unwrap();
        let emitted = field_to_geojson(&field);
        let back = parse_field(&emitted, "ignored").unwrap();
        assert_eq!(back.name, "round", "name travels via properties");
        assert_eq!(back.contour.points(), field.contour.points());
        assert_eq!(back.obstacles[0].points(), field.obstacles[0].points());
    }

    #[test]
    fn load_field_names_after_the_file_stem() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("north-40.geojson");
        std::fs::write(
            &path,
            r#"{"type":"Polygon","coordinates":[[[0,0],[200,0],[200,150],[0,150],[0,0]]]}"#,
        )
        .unwrap();
        let field = load_field(&path).unwrap();
        assert_eq!(field.name, "north-40");
    }
}
