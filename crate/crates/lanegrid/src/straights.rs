//! The conventional baseline: parallel straight lanes, swept over all
//! directions.
//!
//! For a direction `d(theta) = (sin theta, cos theta)` rows are placed on
//! support lines spaced at the operating width, starting one width in from
//! the lowest support value the headland ring reaches. Each row is clipped
//! to the headland region by even-odd crossing, obstacle headland spans are
//! subtracted, and what remains becomes one lane per contiguous piece. The
//! best direction is simply the one with the fewest lanes; ties resolve to
//! the smallest angle so runs are reproducible.

use serde::Serialize;

use crate::config::PlannerConfig;
use crate::error::PlanError;
use crate::geometry::{cross, dot, interpolate_polyline, Point, Polyline, Ring};
use crate::headland::{build_headlands, FieldGeometry, HeadlandSet};
use crate::plan::{Lane, LanePlan, ReferenceCandidate};

/// Clipped row pieces shorter than this are discarded: a lane the machine
/// cannot meaningfully enter is not worth a transition.
const MIN_ROW_LEN: f64 = 1.0;

/// Lane direction for a bearing angle (radians): zero points along +y,
/// growing clockwise towards +x.
pub(crate) fn direction(angle: f64) -> Point {
    Point::new(angle.sin(), angle.cos())
}

/// Intervals of the line `origin + t * dir` (unit `dir`) lying inside the
/// ring, by even-odd crossing. Vertices exactly on the line are handled by
/// the half-open rule, so each boundary crossing is counted once.
fn line_ring_intervals(ring: &Ring, origin: Point, dir: Point) -> Vec<(f64, f64)> {
    let pts = ring.points();
    let n = pts.len();
    // Signed perpendicular offset of each vertex from the line.
    let side: Vec<f64> = pts.iter().map(|p| cross(dir, *p - origin)).collect();
    let mut ts: Vec<f64> = Vec::new();
    for i in 0..n {
        let (sa, sb) = (side[i], side[(i + 1) % n]);
        if (sa > 0.0) != (sb > 0.0) {
            let u = sa / (sa - sb);
            let p = pts[i] + (pts[(i + 1) % n] - pts[i]) * u;
            ts.push(dot(p - origin, dir));
        }
    }
    ts.sort_by(f64::total_cmp);
    ts.chunks_exact(2).map(|c| (c[0], c[1])).collect()
}

/// Interval difference `base - holes`, both sorted and disjoint.
fn subtract_intervals(base: &[(f64, f64)], holes: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(base.len());
    for &(lo, hi) in base {
        let mut cursor = lo;
        for &(hlo, hhi) in holes {
            if hhi <= cursor || hlo >= hi {
                continue;
            }
            if hlo > cursor {
                out.push((cursor, hlo));
            }
            cursor = cursor.max(hhi);
            if cursor >= hi {
                break;
            }
        }
        if cursor < hi {
            out.push((cursor, hi));
        }
    }
    out
}

/// All row segments for one direction, ordered by row and then along the
/// row. Each segment is one lane.
pub(crate) fn build_rows(hs: &HeadlandSet, cfg: &PlannerConfig, angle: f64) -> Vec<(Point, Point)> {
    let d = direction(angle);
    let normal = Point::new(d.y, -d.x); // support axis, right of the direction
    let w = cfg.operating_width;

    let (mut c_min, mut c_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in hs.headland.points() {
        let c = dot(*p, normal);
        c_min = c_min.min(c);
        c_max = c_max.max(c);
    }

    let mut rows = Vec::new();
    let mut k = 1usize;
    loop {
        let c = c_min + k as f64 * w;
        if c >= c_max {
            break;
        }
        let origin = normal * c;
        let base = line_ring_intervals(&hs.headland, origin, d);
        let mut holes: Vec<(f64, f64)> = Vec::new();
        for ob in &hs.obstacle_headlands {
            holes.extend(line_ring_intervals(ob, origin, d));
        }
        holes.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (t0, t1) in subtract_intervals(&base, &holes) {
            if t1 - t0 >= MIN_ROW_LEN {
                rows.push((origin + d * t0, origin + d * t1));
            }
        }
        k += 1;
    }
    rows
}

/// Lane count for one direction.
pub(crate) fn count_at_angle(hs: &HeadlandSet, cfg: &PlannerConfig, angle: f64) -> usize {
    build_rows(hs, cfg, angle).len()
}

/// Package the rows of one direction as a plan.
pub(crate) fn plan_from_rows(
    hs: &HeadlandSet,
    cfg: &PlannerConfig,
    angle: f64,
    field_name: &str,
) -> LanePlan {
    let spacing = cfg.lane_spacing();
    let lanes: Vec<Lane> = build_rows(hs, cfg, angle)
        .into_iter()
        .enumerate()
        .map(|(i, (a, b))| {
            let line = Polyline::open(vec![a, b]).expect("row endpoints distinct");
            Lane {
                index: i + 1,
                parent: None,
                points: interpolate_polyline(&line, spacing).expect("spacing validated"),
                unterminated_start: false,
                unterminated_end: false,
            }
        })
        .collect();
    LanePlan {
        field: field_name.to_string(),
        reference: ReferenceCandidate::StraightLine { angle },
        lanes,
        warnings: hs.warnings.clone(),
    }
}

/// The angles of the sweep grid, degrees: multiples of the grid step in
/// `[0, 360)`.
pub(crate) fn sweep_grid_deg(cfg: &PlannerConfig) -> Vec<f64> {
    let mut angles = Vec::new();
    let mut a = 0.0;
    while a < 360.0 {
        angles.push(a);
        a += cfg.angle_grid_deg;
    }
    angles
}

/// Lane counts over the full direction sweep.
#[derive(Clone, Debug, Serialize)]
pub struct AngleSweep {
    pub field: String,
    /// `(angle_deg, n_lanes)` per grid angle, ascending.
    pub entries: Vec<(f64, usize)>,
}

impl AngleSweep {
    /// The winning entry: fewest lanes, ties to the smallest angle.
    pub fn best(&self) -> (f64, usize) {
        self.entries
            .iter()
            .copied()
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.total_cmp(&b.0)))
            .expect("sweep grid is never empty")
    }
}

/// Sweep the direction grid and report the lane count per angle.
pub fn sweep_angles(field: &FieldGeometry, cfg: &PlannerConfig) -> Result<AngleSweep, PlanError> {
    let hs = build_headlands(field, cfg)?;
    let entries = sweep_grid_deg(cfg)
        .into_iter()
        .map(|deg| (deg, count_at_angle(&hs, cfg, deg.to_radians())))
        .collect();
    Ok(AngleSweep {
        field: field.name.clone(),
        entries,
    })
}

/// Fit the best family of parallel straight lanes.
pub fn fit_straights(field: &FieldGeometry, cfg: &PlannerConfig) -> Result<LanePlan, PlanError> {
    let hs = build_headlands(field, cfg)?;
    let best = sweep_grid_deg(cfg)
        .into_iter()
        .map(|deg| {
            let angle = deg.to_radians();
            (count_at_angle(&hs, cfg, angle), deg)
        })
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)))
        .expect("sweep grid is never empty");
    Ok(plan_from_rows(&hs, cfg, best.1.to_radians(), &field.name))
}
