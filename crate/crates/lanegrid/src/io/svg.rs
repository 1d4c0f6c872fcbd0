//! SVG rendering of fields, headlands and plans, figure style: field and
//! obstacle contours black, headland paths green, interior lanes blue, the
//! reference path red. One SVG user unit is one metre, with the y axis
//! flipped so north stays up; both axes carry metre ticks.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::InputError;
use crate::freeform::reference_points;
use crate::geometry::{Bbox, Point, Ring};
use crate::headland::{FieldGeometry, HeadlandSet};
use crate::plan::{LanePlan, ReferenceCandidate};

const MARGIN: f64 = 40.0;

const FIELD_FILL: &str = "#f6f3ea";
const CONTOUR: &str = "#111111";
const HEADLAND: &str = "#1a7f37";
const LANE: &str = "#0a5bd3";
const REFERENCE: &str = "#d1242f";
const UNTERMINATED: &str = "#d1242f";

/// Render a field — optionally with its headlands and a plan — to SVG text.
pub fn svg_string(
    field: &FieldGeometry,
    headlands: Option<&HeadlandSet>,
    plan: Option<&LanePlan>,
) -> String {
    let bbox = field.contour.bbox();
    let width = bbox.width() + 2.0 * MARGIN;
    let height = bbox.height() + 2.0 * MARGIN;
    // Field coordinates are y-up; SVG user space is y-down.
    let map = |p: Point| -> (f64, f64) {
        (p.x - bbox.min_x + MARGIN, bbox.max_y - p.y + MARGIN)
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width:.0} {height:.0}\">"
    );
    let _ = writeln!(
        out,
        "<title>{}: {}</title>",
        escape(&field.name),
        plan.map_or("field geometry".to_string(), |p| format!(
            "{} interior lanes",
            p.n_lanes()
        ))
    );
    let _ = writeln!(
        out,
        "<rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>"
    );

    // Field surface and contour.
    let _ = writeln!(
        out,
        "<polygon points=\"{}\" fill=\"{FIELD_FILL}\" stroke=\"{CONTOUR}\" stroke-width=\"2\"/>",
        ring_path(&field.contour, map)
    );
    for ob in &field.obstacles {
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"white\" stroke=\"{CONTOUR}\" stroke-width=\"2\"/>",
            ring_path(ob, map)
        );
    }

    // Headland paths.
    if let Some(hs) = headlands {
        let _ = writeln!(
            out,
            "<polygon points=\"{}\" fill=\"none\" stroke=\"{HEADLAND}\" stroke-width=\"1.5\"/>",
            ring_path(&hs.headland, map)
        );
        for ob in &hs.obstacle_headlands {
            let _ = writeln!(
                out,
                "<polygon points=\"{}\" fill=\"none\" stroke=\"{HEADLAND}\" stroke-width=\"1.5\"/>",
                ring_path(ob, map)
            );
        }
    }

    // Interior lanes, then the reference on top.
    if let Some(plan) = plan {
        for lane in &plan.lanes {
            let pts: String = lane
                .points
                .points()
                .iter()
                .map(|&p| {
                    let (x, y) = map(p);
                    format!("{x:.2},{y:.2} ")
                })
                .collect();
            let _ = writeln!(
                out,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{LANE}\" stroke-width=\"1.5\"/>",
                pts.trim_end()
            );
            for (flagged, p) in [
                (lane.unterminated_start, lane.points.points()[0]),
                (
                    lane.unterminated_end,
                    lane.points.points()[lane.points.points().len() - 1],
                ),
            ] {
                if flagged {
                    let (x, y) = map(p);
                    let _ = writeln!(
                        out,
                        "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"{UNTERMINATED}\"/>"
                    );
                }
            }
        }
        match (&plan.reference, headlands) {
            (cand @ ReferenceCandidate::HeadlandSegment { .. }, Some(hs)) => {
                if let Some(seed) = reference_points(hs, cand) {
                    let pts: String = seed
                        .iter()
                        .map(|&p| {
                            let (x, y) = map(p);
                            format!("{x:.2},{y:.2} ")
                        })
                        .collect();
                    let _ = writeln!(
                        out,
                        "<polyline points=\"{}\" fill=\"none\" stroke=\"{REFERENCE}\" \
                         stroke-width=\"3\" stroke-linecap=\"round\" opacity=\"0.85\"/>",
                        pts.trim_end()
                    );
                }
            }
            _ => {}
        }
    }

    axes(&mut out, bbox, width, height);
    out.push_str("</svg>\n");
    out
}

/// Metre rulers along the bottom and left page edges.
fn axes(out: &mut String, bbox: Bbox, width: f64, height: f64) {
    let base_y = height - MARGIN + 10.0;
    let base_x = MARGIN - 10.0;
    let _ = writeln!(
        out,
        "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444444\" \
         stroke=\"none\" text-anchor=\"middle\">"
    );
    let _ = writeln!(
        out,
        "<line x1=\"{MARGIN}\" y1=\"{base_y:.0}\" x2=\"{:.0}\" y2=\"{base_y:.0}\" \
         stroke=\"#444444\" stroke-width=\"1\"/>",
        width - MARGIN
    );
    let _ = writeln!(
        out,
        "<line x1=\"{base_x:.0}\" y1=\"{MARGIN}\" x2=\"{base_x:.0}\" y2=\"{:.0}\" \
         stroke=\"#444444\" stroke-width=\"1\"/>",
        height - MARGIN
    );
    let step = tick_step(bbox.width().max(bbox.height()));
    let mut x = (bbox.min_x / step).ceil() * step;
    while x <= bbox.max_x + 1e-9 {
        let px = x - bbox.min_x + MARGIN;
        let _ = writeln!(
            out,
            "<line x1=\"{px:.1}\" y1=\"{base_y:.0}\" x2=\"{px:.1}\" y2=\"{:.0}\" \
             stroke=\"#444444\" stroke-width=\"1\"/>",
            base_y + 4.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{px:.1}\" y=\"{:.0}\">{x:.0} m</text>",
            base_y + 16.0
        );
        x += step;
    }
    let mut y = (bbox.min_y / step).ceil() * step;
    while y <= bbox.max_y + 1e-9 {
        let py = bbox.max_y - y + MARGIN;
        let _ = writeln!(
            out,
            "<line x1=\"{:.0}\" y1=\"{py:.1}\" x2=\"{base_x:.0}\" y2=\"{py:.1}\" \
             stroke=\"#444444\" stroke-width=\"1\"/>",
            base_x - 4.0
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.0}\" y=\"{:.1}\" text-anchor=\"end\">{y:.0} m</text>",
            base_x - 6.0,
            py + 4.0
        );
        y += step;
    }
    out.push_str("</g>\n");
}

/// A round tick spacing giving roughly 4–8 ticks over `extent`.
fn tick_step(extent: f64) -> f64 {
    for step in [10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0] {
        if extent / step <= 8.0 {
            return step;
        }
    }
    2000.0
}

fn ring_path(ring: &Ring, map: impl Fn(Point) -> (f64, f64)) -> String {
    let pts: String = ring
        .points()
        .iter()
        .map(|&p| {
            let (x, y) = map(p);
            format!("{x:.2},{y:.2} ")
        })
        .collect();
    pts.trim_end().to_string()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Write the rendered figure atomically.
pub fn emit_svg(
    field: &FieldGeometry,
    headlands: Option<&HeadlandSet>,
    plan: Option<&LanePlan>,
    path: &Path,
) -> Result<(), InputError> {
    super::atomic_write(path, &svg_string(field, headlands, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PlannerConfig;
    use crate::headland::build_headlands;

    fn rect_field() -> FieldGeometry {
        let ring = Ring::new(vec![
            Point::new(0.0, 0.0),
            Point::new(200.0, 0.0),
            Point::new(200.0, 150.0),
            Point::new(0.0, 150.0),
        ])
        .unwrap();
        FieldGeometry::new("svg-test", ring, vec![]).unwrap()
    }

    #[test]
    fn figure_contains_all_layers() {
        let field = rect_field();
        let cfg = PlannerConfig::default();
        let hs = build_headlands(&field, &cfg).unwrap();
        let plan = crate::freeform::fit_freeform(&field, &cfg).unwrap();
        let svg = svg_string(&field, Some(&hs), Some(&plan));

        assert!(svg.starts_with("<svg "));
        assert!(svg.trim_end().ends_with("</svg>"));
        // One field polygon, one headland polygon, three lane polylines.
        assert_eq!(svg.matches("<polygon").count(), 2);
        assert_eq!(svg.matches(&format!("stroke=\"{LANE}\"")).count(), 3);
        // Axes are annotated in metres.
        assert!(svg.contains(">0 m</text>"));
        assert!(svg.contains(">100 m</text>"));
        // The viewBox spans the field plus margins: 280 x 230.
        assert!(svg.contains("viewBox=\"0 0 280 230\""), "{}", &svg[..120]);
    }

    #[test]
    fn y_axis_points_north() {
        let field = rect_field();
        let svg = svg_string(&field, None, None);
        // The contour's first vertex (0,0) must land at page y = 150 + 40,
        // i.e. lower than the (0,150) vertex at page y = 40.
        assert!(svg.contains("40.00,190.00"));
        assert!(svg.contains("40.00,40.00"));
    }

    #[test]
    fn segment_reference_is_highlighted() {
        let field = rect_field();
        let cfg = PlannerConfig::default();
        let hs = build_headlands(&field, &cfg).unwrap();
        let plan = LanePlan {
            field: "svg-test".into(),
            reference: ReferenceCandidate::HeadlandSegment {
                start_index: 0,
                end_index: 10,
                reversed: false,
            },
            lanes: vec![crate::plan::Lane {
                index: 1,
                parent: None,
                points: crate::geometry::Polyline::open(vec![
                    Point::new(18.0, 54.0),
                    Point::new(182.0, 54.0),
                ])
                .unwrap(),
                unterminated_start: false,
                unterminated_end: true,
            }],
            warnings: vec![],
        };
        let svg = svg_string(&field, Some(&hs), Some(&plan));
        assert!(svg.contains(&format!("stroke=\"{REFERENCE}\"")), "reference drawn");
        // The unterminated end carries a marker dot.
        assert!(svg.contains(&format!("<circle cx=\"222.00\" cy=\"136.00\" r=\"3\" fill=\"{UNTERMINATED}\"/>")));
    }

    #[test]
    fn emit_svg_writes_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("field.svg");
        emit_svg(&rect_field(), None, None, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("</svg>"));
    }
}
