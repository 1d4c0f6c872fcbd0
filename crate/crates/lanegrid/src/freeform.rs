//! The freeform planner: interior lanes derived by repeated sideways
//! offsetting of a reference path selected along the headland.
//!
//! A reference candidate is either a contiguous piece of the headland ring
//! (traversed in either direction) or a family of straight rows at a sweep
//! angle — straights are the degenerate freeform case, and enumerating them
//! alongside the curved candidates guarantees the freeform result is never
//! worse than the straight baseline.
//!
//! For a headland-segment candidate, the first lane is obtained by offsetting
//! every consecutive point pair of the reference sideways by the operating
//! width into the field interior, the second lane by offsetting the first,
//! and so on until no offset point survives pruning. An offset point is
//! pruned when it leaves the headland region, enters an obstacle headland,
//! or comes closer than the operating width to *any* grid point of its
//! parent — the grids are spaced (see [`crate::geometry::max_spacing`]) so
//! that this point-wise test guarantees the true lane-to-lane clearance
//! never falls below `epsilon * w`. Surviving points are split at pruning
//! gaps into runs; each run of at least two points becomes a lane, its ends
//! extended straight onto the headland ring where possible, and becomes a
//! parent for further offsetting in turn.
//!
//! A candidate is dismissed when a lane turns sharper than the configured
//! bound, comes back within the operating width of itself further along its
//! own course, crosses another lane, propagation fails to reach some part of
//! the field (an abandoned region — minimising lane count must not be
//! gamed by simply not working part of the field), or runs away. Among
//! feasible candidates the best plan has the fewest lanes, then the shortest
//! total length, then the earliest enumeration index, making the result
//! reproducible run to run and across worker counts.

use std::collections::VecDeque;

use crate::config::PlannerConfig;
use crate::error::PlanError;
use crate::geometry::{
    line_intersection, min_point_distance, offset_step, resample_polyline, segment_intersects,
    Bbox, Point, Polyline,
};
use crate::headland::{build_headlands, FieldGeometry, HeadlandSet};
use crate::plan::{Lane, LanePlan, ReferenceCandidate};
use crate::straights;

/// Float cushion for strict clearance comparisons.
const PRUNE_TOL: f64 = 1e-9;

/// A lane end this close to the headland already terminates on it.
const ON_RING_TOL: f64 = 0.1;

/// Hard cap on lanes per candidate; a well-formed field stays far below.
const MAX_LANES: usize = 512;

/// Extra slack on the half-width coverage radius: grid discretisation and
/// forced residual slivers must not fail a sound plan, while an abandoned
/// region (tens of metres from any path) always does.
const COVERAGE_SLACK: f64 = 2.0;

/// Why a reference candidate produced no acceptable plan.
#[derive(Clone, Debug, PartialEq)]
pub enum Dismissal {
    /// Fewer than two grid points — nothing to offset.
    ReferenceTooShort,
    /// Neither or both offset sides of the reference lie inside the
    /// headland region.
    AmbiguousSide,
    /// A lane violates a hard constraint.
    Constraint(Violation),
    /// Propagation finished but left a region of the field without a lane
    /// within reach; sample coordinates of one such spot.
    CoverageGap { x: f64, y: f64 },
    /// Propagation exceeded the lane cap.
    Runaway { lanes: usize },
}

impl std::fmt::Display for Dismissal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dismissal::ReferenceTooShort => write!(f, "reference too short"),
            Dismissal::AmbiguousSide => write!(f, "interior side ambiguous"),
            Dismissal::Constraint(v) => write!(f, "{v}"),
            Dismissal::CoverageGap { x, y } => {
                write!(f, "field not covered near ({x:.1}, {y:.1})")
            }
            Dismissal::Runaway { lanes } => write!(f, "propagation runaway at {lanes} lanes"),
        }
    }
}

/// A hard constraint violation within a plan.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// Heading change between consecutive grid pairs exceeds the bound.
    SharpTurn {
        lane: usize,
        index: usize,
        angle: f64,
    },
    /// Two grid points of one lane further apart than the blocking interval
    /// come closer than the operating width.
    SelfApproach {
        lane: usize,
        i: usize,
        j: usize,
        dist: f64,
    },
    /// Two lanes intersect.
    LanesCross { a: usize, b: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::SharpTurn { lane, index, angle } => write!(
                f,
                "lane {lane} turns {:.1} deg at grid point {index}",
                angle.to_degrees()
            ),
            Violation::SelfApproach { lane, i, j, dist } => write!(
                f,
                "lane {lane} approaches itself to {dist:.2} m between grid points {i} and {j}"
            ),
            Violation::LanesCross { a, b } => write!(f, "lanes {a} and {b} cross"),
        }
    }
}

/// Check the hard lane constraints of a finished plan: turn sharpness,
/// self-approach, and pairwise non-crossing. Returns every violation found,
/// in lane order. The planner enforces the same checks incrementally during
/// propagation; this standalone form serves validation and tests.
pub fn check_constraints(plan: &LanePlan, cfg: &PlannerConfig) -> Vec<Violation> {
    let mut out = Vec::new();
    for lane in &plan.lanes {
        if let Some(v) = lane_violation(lane.index, lane.points.points(), cfg) {
            out.push(v);
        }
    }
    for i in 0..plan.lanes.len() {
        for j in (i + 1)..plan.lanes.len() {
            let (a, b) = (&plan.lanes[i], &plan.lanes[j]);
            if polylines_cross(&a.points, &b.points) {
                out.push(Violation::LanesCross {
                    a: a.index,
                    b: b.index,
                });
            }
        }
    }
    out
}

/// Turn and self-approach checks for one lane's grid points.
fn lane_violation(lane_index: usize, pts: &[Point], cfg: &PlannerConfig) -> Option<Violation> {
    // Heading change between consecutive point pairs, on the shortest arc.
    let mut prev_heading: Option<f64> = None;
    for (k, w) in pts.windows(2).enumerate() {
        let heading = (w[1].y - w[0].y).atan2(w[1].x - w[0].x);
        if let Some(ph) = prev_heading {
            let mut delta = heading - ph;
            while delta > std::f64::consts::PI {
                delta -= 2.0 * std::f64::consts::PI;
            }
            while delta < -std::f64::consts::PI {
                delta += 2.0 * std::f64::consts::PI;
            }
            if delta.abs() > cfg.max_turn + 1e-9 {
                return Some(Violation::SharpTurn {
                    lane: lane_index,
                    index: k,
                    angle: delta.abs(),
                });
            }
        }
        prev_heading = Some(heading);
    }
    // Self-approach beyond the blocking interval: the lane must keep the
    // operating width to its own distant course.
    let w = cfg.operating_width;
    let block = cfg.blocking_interval;
    for i in 0..pts.len() {
        for j in (i + block)..pts.len() {
            let d = pts[i].dist(pts[j]);
            if d < w - PRUNE_TOL {
                return Some(Violation::SelfApproach {
                    lane: lane_index,
                    i,
                    j,
                    dist: d,
                });
            }
        }
    }
    None
}

/// Whether two lanes touch or cross anywhere.
fn polylines_cross(a: &Polyline, b: &Polyline) -> bool {
    let (ba, bb) = (Bbox::of(a.points()), Bbox::of(b.points()));
    if ba.min_x > bb.max_x || bb.min_x > ba.max_x || ba.min_y > bb.max_y || bb.min_y > ba.max_y {
        return false;
    }
    for (a0, a1) in a.segments() {
        for (b0, b1) in b.segments() {
            if segment_intersects(a0, a1, b0, b1) {
                return true;
            }
        }
    }
    false
}

/// Enumerate the reference candidates for a headland set: segment candidates
/// at every stride position and configured length, forward and reversed,
/// followed by the straight-row candidates of the direction sweep.
pub fn enumerate_candidates(hs: &HeadlandSet, cfg: &PlannerConfig) -> Vec<ReferenceCandidate> {
    let ring = hs.headland.points();
    let n = ring.len();
    let perimeter = hs.headland.perimeter();

    // Start indices spaced at least the stride apart along the ring.
    let mut starts = vec![0usize];
    let mut acc = 0.0;
    for i in 0..n {
        acc += ring[i].dist(ring[(i + 1) % n]);
        if acc >= cfg.candidate_stride && i + 1 < n {
            starts.push(i + 1);
            acc = 0.0;
        }
    }

    let lengths: Vec<f64> = if cfg.candidate_lengths.is_empty() {
        (1..=10).map(|k| perimeter * k as f64 / 10.0).collect()
    } else {
        cfg.candidate_lengths.clone()
    };

    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &start in &starts {
        for &target in &lengths {
            // Walk forward until the target arc length (or the full ring) is
            // reached.
            let mut end = start;
            let mut walked = 0.0;
            for step in 1..n {
                let i = (start + step - 1) % n;
                walked += ring[i].dist(ring[(i + 1) % n]);
                end = (start + step) % n;
                if walked >= target {
                    break;
                }
            }
            if end == start {
                continue;
            }
            if seen.insert((start, end)) {
                for reversed in [false, true] {
                    out.push(ReferenceCandidate::HeadlandSegment {
                        start_index: start,
                        end_index: end,
                        reversed,
                    });
                }
            }
        }
    }
    for deg in straights::sweep_grid_deg(cfg) {
        out.push(ReferenceCandidate::StraightLine {
            angle: deg.to_radians(),
        });
    }
    out
}

/// Resolve the grid points a headland-segment candidate traverses. Straight
/// candidates have no reference polyline.
pub fn reference_points(hs: &HeadlandSet, cand: &ReferenceCandidate) -> Option<Vec<Point>> {
    match *cand {
        ReferenceCandidate::HeadlandSegment {
            start_index,
            end_index,
            reversed,
        } => {
            let ring = hs.headland.points();
            let n = ring.len();
            let mut pts = Vec::new();
            let mut i = start_index % n;
            loop {
                pts.push(ring[i]);
                if i == end_index % n {
                    break;
                }
                i = (i + 1) % n;
            }
            if reversed {
                pts.reverse();
            }
            Some(pts)
        }
        ReferenceCandidate::StraightLine { .. } => None,
    }
}

/// Extend a run's ends straight onto the headland ring: each end is pushed
/// along the heading of its final point pair to the nearest ring crossing.
/// An end already within [`ON_RING_TOL`] of the ring stays as it is. An end
/// whose extension would exceed `cap` or pass through an obstacle headland
/// is left in place and flagged unterminated.
fn extrapolate(
    mut pts: Vec<Point>,
    hs: &HeadlandSet,
    cap: f64,
) -> (Vec<Point>, bool, bool) {
    let extend = |last: Point, prev: Point| -> Option<Point> {
        if hs.headland.dist_to_point(last) <= ON_RING_TOL {
            return None; // already terminates on the ring
        }
        let len = prev.dist(last);
        let dir = (last - prev) * (1.0 / len);
        let tip = last + dir;
        let mut best: Option<f64> = None;
        for (a, b) in hs.headland.edges() {
            if let Some((t, u)) = line_intersection(last, tip, a, b) {
                if (0.0..1.0).contains(&u) && t > 1e-9 && t <= cap {
                    best = Some(best.map_or(t, |s: f64| s.min(t)));
                }
            }
        }
        let t = best?;
        let hit = last + dir * t;
        // The extension must not cut through an obstacle headland.
        for ob in &hs.obstacle_headlands {
            for (a, b) in ob.edges() {
                if segment_intersects(last, hit, a, b) {
                    return None;
                }
            }
        }
        Some(hit)
    };

    let unterminated_start = match extend(pts[0], pts[1]) {
        Some(p) => {
            pts.insert(0, p);
            false
        }
        None => hs.headland.dist_to_point(pts[0]) > ON_RING_TOL,
    };
    let n = pts.len();
    let unterminated_end = match extend(pts[n - 1], pts[n - 2]) {
        Some(p) => {
            pts.push(p);
            false
        }
        None => hs.headland.dist_to_point(pts[n - 1]) > ON_RING_TOL,
    };
    (pts, unterminated_start, unterminated_end)
}

/// Coverage probe: interior sample points that only a lane can cover (the
/// headland and obstacle headland paths already cover their own
/// neighbourhoods). Built once per headland set, checked per candidate.
pub(crate) struct CoverageProbe {
    required: Vec<Point>,
    radius: f64,
}

pub(crate) fn build_probe(hs: &HeadlandSet, cfg: &PlannerConfig) -> CoverageProbe {
    let radius = 0.5 * cfg.operating_width + COVERAGE_SLACK;
    let step = 0.5 * cfg.operating_width;
    let bbox = hs.headland.bbox();
    let mut required = Vec::new();
    let mut y = bbox.min_y;
    while y <= bbox.max_y {
        let mut x = bbox.min_x;
        while x <= bbox.max_x {
            let p = Point::new(x, y);
            if hs.admissible(p)
                && hs.headland.dist_to_point(p) > radius
                && hs
                    .obstacle_headlands
                    .iter()
                    .all(|ob| ob.dist_to_point(p) > radius)
            {
                required.push(p);
            }
            x += step;
        }
        y += step;
    }
    CoverageProbe { required, radius }
}

/// First probe point no lane comes within the coverage radius of, if any.
fn coverage_gap(probe: &CoverageProbe, lanes: &[Lane]) -> Option<Point> {
    let boxes: Vec<Bbox> = lanes.iter().map(|l| Bbox::of(l.points.points())).collect();
    'sample: for &p in &probe.required {
        for (lane, bbox) in lanes.iter().zip(&boxes) {
            if bbox.contains(p, probe.radius) && lane.points.dist_to_point(p) <= probe.radius {
                continue 'sample;
            }
        }
        return Some(p);
    }
    None
}

/// Evaluate one reference candidate into a plan, or explain its dismissal.
pub fn evaluate_candidate(
    hs: &HeadlandSet,
    cfg: &PlannerConfig,
    cand: &ReferenceCandidate,
    field_name: &str,
) -> Result<LanePlan, Dismissal> {
    let probe = build_probe(hs, cfg);
    evaluate_with_probe(hs, cfg, &probe, cand, field_name)
}

fn evaluate_with_probe(
    hs: &HeadlandSet,
    cfg: &PlannerConfig,
    probe: &CoverageProbe,
    cand: &ReferenceCandidate,
    field_name: &str,
) -> Result<LanePlan, Dismissal> {
    let plan = match cand {
        ReferenceCandidate::StraightLine { angle } => {
            straights::plan_from_rows(hs, cfg, *angle, field_name)
        }
        ReferenceCandidate::HeadlandSegment { .. } => {
            let seed = reference_points(hs, cand).expect("segment candidate");
            propagate_plan(hs, cfg, seed, cand.clone(), field_name)?
        }
    };
    if let Some(p) = coverage_gap(probe, &plan.lanes) {
        return Err(Dismissal::CoverageGap { x: p.x, y: p.y });
    }
    Ok(plan)
}

/// Grow a full plan from a seed polyline by breadth-first offsetting.
fn propagate_plan(
    hs: &HeadlandSet,
    cfg: &PlannerConfig,
    seed: Vec<Point>,
    reference: ReferenceCandidate,
    field_name: &str,
) -> Result<LanePlan, Dismissal> {
    if seed.len() < 2 {
        return Err(Dismissal::ReferenceTooShort);
    }
    let w = cfg.operating_width;

    // Resolve the interior side at the middle pair: the offset must land
    // inside the headland region. Reversing the traversal mirrors the side.
    let mid = (seed.len() - 1) / 2;
    let (a, b) = (seed[mid], seed[mid + 1]);
    let q_left = match offset_step(a, b, w) {
        Ok((_, q)) => q,
        Err(_) => return Err(Dismissal::ReferenceTooShort),
    };
    let q_right = a.mid(b) * 2.0 - q_left;
    let inside_left = hs.headland.contains(q_left);
    let inside_right = hs.headland.contains(q_right);
    let seed = match (inside_left, inside_right) {
        (true, false) => seed,
        (false, true) => {
            let mut s = seed;
            s.reverse();
            s
        }
        _ => return Err(Dismissal::AmbiguousSide),
    };

    let mut lanes: Vec<Lane> = Vec::new();
    let mut warnings = hs.warnings.clone();
    let mut queue: VecDeque<(Option<usize>, Vec<Point>)> = VecDeque::new();
    queue.push_back((None, seed));

    let margin = cfg.clearance_margin();
    while let Some((parent, prev)) = queue.pop_front() {
        // Offset every consecutive pair and prune: too close to the region
        // boundary or an obstacle headland (within the resampling-sag
        // margin), or within the operating width of any grid point of the
        // parent.
        let kept: Vec<Option<Point>> = prev
            .windows(2)
            .map(|pair| {
                let (_, q) = offset_step(pair[0], pair[1], w).ok()?;
                let ok = hs.admissible_with_clearance(q, margin)
                    && min_point_distance(q, &prev) >= w - PRUNE_TOL;
                ok.then_some(q)
            })
            .collect();

        // Split into maximal contiguous runs of at least two points.
        let mut runs: Vec<Vec<Point>> = Vec::new();
        let mut cur: Vec<Point> = Vec::new();
        for q in kept {
            match q {
                Some(p) => cur.push(p),
                None => {
                    if cur.len() >= 2 {
                        runs.push(std::mem::take(&mut cur));
                    } else {
                        cur.clear();
                    }
                }
            }
        }
        if cur.len() >= 2 {
            runs.push(cur);
        }

        for run in runs {
            let (ext, unterminated_start, unterminated_end) =
                extrapolate(run, hs, cfg.extension_cap());
            let line = Polyline::open(ext).expect("runs have distinct points");
            // Uniform grid: the turn bound and the blocking interval both
            // count grid steps, so one step must mean one lane-grid length.
            let resampled =
                resample_polyline(&line, cfg.lane_spacing()).expect("spacing validated");

            let index = lanes.len() + 1;
            if let Some(v) = lane_violation(index, resampled.points(), cfg) {
                return Err(Dismissal::Constraint(v));
            }
            for existing in &lanes {
                if polylines_cross(&existing.points, &resampled) {
                    return Err(Dismissal::Constraint(Violation::LanesCross {
                        a: existing.index,
                        b: index,
                    }));
                }
            }
            if unterminated_start {
                warnings.push(format!("lane {index} not terminated on the headland at its start"));
            }
            if unterminated_end {
                warnings.push(format!("lane {index} not terminated on the headland at its end"));
            }
            let pts = resampled.points().to_vec();
            lanes.push(Lane {
                index,
                parent,
                points: resampled,
                unterminated_start,
                unterminated_end,
            });
            if lanes.len() > MAX_LANES {
                return Err(Dismissal::Runaway { lanes: lanes.len() });
            }
            queue.push_back((Some(index), pts));
        }
    }

    Ok(LanePlan {
        field: field_name.to_string(),
        reference,
        lanes,
        warnings,
    })
}

/// Number of interior lanes of a plan.
pub fn count_lanes(plan: &LanePlan) -> usize {
    plan.n_lanes()
}

/// Fit the best freeform plan for a field: enumerate all reference
/// candidates, evaluate each, keep the feasible plan with the fewest lanes
/// (ties: shortest total length, then earliest candidate).
///
/// With the `parallel` feature, candidates are evaluated on a thread pool;
/// results are reduced in enumeration order, so the outcome is identical
/// with any worker count.
pub fn fit_freeform(field: &FieldGeometry, cfg: &PlannerConfig) -> Result<LanePlan, PlanError> {
    let hs = build_headlands(field, cfg)?;
    let candidates = enumerate_candidates(&hs, cfg);
    let probe = build_probe(&hs, cfg);

    let evaluate = |cand: &ReferenceCandidate| -> Result<LanePlan, Dismissal> {
        evaluate_with_probe(&hs, cfg, &probe, cand, &field.name)
    };

    #[cfg(feature = "parallel")]
    let results: Vec<Result<LanePlan, Dismissal>> = {
        use rayon::prelude::*;
        candidates.par_iter().map(evaluate).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<LanePlan, Dismissal>> = candidates.iter().map(evaluate).collect();

    let mut best: Option<(usize, f64, usize)> = None; // (n_lanes, length, index)
    for (idx, result) in results.iter().enumerate() {
        if let Ok(plan) = result {
            let key = (plan.n_lanes(), plan.total_length(), idx);
            let better = match &best {
                None => true,
                Some((n, len, _)) => {
                    key.0 < *n || (key.0 == *n && key.1 < *len - 1e-12)
                }
            };
            if better {
                best = Some(key);
            }
        }
    }
    match best {
        Some((_, _, idx)) => Ok(results.into_iter().nth(idx).expect("index valid").expect("feasible")),
        None => Err(PlanError::Infeasible {
            log: candidates
                .iter()
                .zip(&results)
                .enumerate()
                .map(|(i, (cand, result))| {
                    let reason = match result {
                        Err(d) => d.to_string(),
                        Ok(_) => unreachable!("no feasible candidate"),
                    };
                    format!("candidate {i} ({}): {reason}", cand.describe())
                })
                .collect(),
        }),
    }
}

/// [`fit_freeform`] on an explicit worker count (used to demonstrate that
/// plans are byte-identical however the evaluation is parallelised).
/// Without the `parallel` feature the count is ignored.
pub fn fit_freeform_with_threads(
    field: &FieldGeometry,
    cfg: &PlannerConfig,
    threads: usize,
) -> Result<LanePlan, PlanError> {
    #[cfg(feature = "parallel")]
    {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        pool.install(|| fit_freeform(field, cfg))
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        fit_freeform(field, cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Ring;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn rect_field(w: f64, h: f64) -> FieldGeometry {
        let ring = Ring::new(vec![pt(0.0, 0.0), pt(w, 0.0), pt(w, h), pt(0.0, h)]).unwrap();
        FieldGeometry::new("rect", ring, vec![]).unwrap()
    }

    fn circle(cx: f64, cy: f64, r: f64, n: usize) -> Ring {
        let pts = (0..n)
            .map(|i| {
                let a = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                pt(cx + r * a.cos(), cy + r * a.sin())
            })
            .collect();
        Ring::new(pts).unwrap()
    }

    /// Half-annulus: outer radius 160, inner 40, flat side on y = 0.
    fn half_annulus() -> FieldGeometry {
        let mut pts = Vec::new();
        let n = 96;
        for i in 0..=n {
            let a = std::f64::consts::PI * i as f64 / n as f64;
            pts.push(pt(160.0 * a.cos(), 160.0 * a.sin()));
        }
        for i in (0..=n).rev() {
            let a = std::f64::consts::PI * i as f64 / n as f64;
            pts.push(pt(40.0 * a.cos(), 40.0 * a.sin()));
        }
        let ring = Ring::new(pts).unwrap();
        FieldGeometry::new("half-annulus", ring, vec![]).unwrap()
    }

    fn ring_index_near(hs: &HeadlandSet, target: Point) -> usize {
        hs.headland
            .points()
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.dist(target).total_cmp(&b.1.dist(target)))
            .map(|(i, _)| i)
            .unwrap()
    }

    // -- constraint checks ------------------------------------------------

    fn plan_of(lanes: Vec<Vec<Point>>) -> LanePlan {
        LanePlan {
            field: "test".into(),
            reference: ReferenceCandidate::StraightLine { angle: 0.0 },
            lanes: lanes
                .into_iter()
                .enumerate()
                .map(|(i, pts)| Lane {
                    index: i + 1,
                    parent: None,
                    points: Polyline::open(pts).unwrap(),
                    unterminated_start: false,
                    unterminated_end: false,
                })
                .collect(),
            warnings: vec![],
        }
    }

    #[test]
    fn detects_sharp_turns() {
        let cfg = PlannerConfig {
            max_turn: 45f64.to_radians(),
            ..PlannerConfig::default()
        };
        // A 90 degree bend.
        let plan = plan_of(vec![vec![pt(0.0, 0.0), pt(10.0, 0.0), pt(10.0, 10.0)]]);
        let vs = check_constraints(&plan, &cfg);
        assert!(matches!(vs[0], Violation::SharpTurn { lane: 1, .. }), "{vs:?}");
        // The same bend passes at the default 135 degrees.
        assert!(check_constraints(&plan, &PlannerConfig::default()).is_empty());
    }

    #[test]
    fn detects_self_approach() {
        // A hairpin: 300 m out, 10 m over, 300 m back. The return course
        // comes within 10 m of the outgoing one far beyond the blocking
        // interval.
        let cfg = PlannerConfig::default();
        let out: Vec<Point> = (0..=30).map(|i| pt(10.0 * i as f64, 0.0)).collect();
        let back: Vec<Point> = (0..=30).map(|i| pt(300.0 - 10.0 * i as f64, 10.0)).collect();
        let mut pts = out;
        pts.extend(back);
        let plan = plan_of(vec![pts]);
        let vs = check_constraints(&plan, &cfg);
        assert!(
            vs.iter().any(|v| matches!(v, Violation::SelfApproach { lane: 1, .. })),
            "{vs:?}"
        );
    }

    #[test]
    fn detects_crossing_lanes() {
        let plan = plan_of(vec![
            vec![pt(0.0, 0.0), pt(100.0, 100.0)],
            vec![pt(0.0, 100.0), pt(100.0, 0.0)],
        ]);
        let vs = check_constraints(&plan, &PlannerConfig::default());
        assert_eq!(vs, vec![Violation::LanesCross { a: 1, b: 2 }]);
    }

    // -- extrapolation ----------------------------------------------------

    #[test]
    fn extrapolate_extends_to_the_ring() {
        let field = rect_field(200.0, 150.0);
        let cfg = PlannerConfig::default();
        let hs = build_headlands(&field, &cfg).unwrap();
        // A horizontal run 40 m short of the left headland wall, 30 m short
        // of the right one: both within the cap.
        let run = vec![pt(58.0, 54.0), pt(100.0, 54.0), pt(152.0, 54.0)];
        let (ext, us, ue) = extrapolate(run, &hs, cfg.extension_cap());
        assert!(!us && !ue);
        assert!(ext[0].dist(pt(18.0, 54.0)) < 1e-6, "{:?}", ext[0]);
        assert!(ext[ext.len() - 1].dist(pt(182.0, 54.0)) < 1e-6);
    }

    #[test]
    fn extrapolate_respects_the_cap() {
        let field = rect_field(400.0, 150.0);
        let cfg = PlannerConfig::default();
        let hs = build_headlands(&field, &cfg).unwrap();
        // The right end is 182 m from the right wall: beyond the 72 m cap.
        let run = vec![pt(60.0, 54.0), pt(200.0, 54.0)];
        let (ext, us, ue) = extrapolate(run, &hs, cfg.extension_cap());
        assert!(!us, "left end extends 42 m");
        assert!(ue, "right end must stay unterminated");
        assert_eq!(ext.len(), 3);
        assert!(ext[2].dist(pt(200.0, 54.0)) < 1e-12, "end unchanged");
    }

    #[test]
    fn extrapolate_keeps_ends_already_on_the_ring() {
        let field = rect_field(200.0, 150.0);
        let cfg = PlannerConfig::default();
        let hs = build_headlands(&field, &cfg).unwrap();
        let run = vec![pt(18.05, 54.0), pt(100.0, 54.0), pt(182.0, 54.0)];
        let (ext, us, ue) = extrapolate(run.clone(), &hs, cfg.extension_cap());
        assert!(!us && !ue);
        assert_eq!(ext, run, "ends within 0.1 m of the ring stay put");
    }

    // -- planning ---------------------------------------------------------

    #[test]
    fn rectangle_needs_three_lanes() {
        let field = rect_field(200.0, 150.0);
        let cfg = PlannerConfig::default();
        let plan = fit_freeform(&field, &cfg).unwrap();
        assert_eq!(plan.n_lanes(), 3);

        // The winner is a family of full-width horizontal lanes spaced at
        // the operating width.
        let mut ys: Vec<f64> = plan
            .lanes
            .iter()
            .map(|l| l.points.points()[0].y)
            .collect();
        ys.sort_by(f64::total_cmp);
        for lane in &plan.lanes {
            let y0 = lane.points.points()[0].y;
            for p in lane.points.points() {
                assert!((p.y - y0).abs() < 1e-6, "lane not horizontal");
            }
            let xs = Bbox::of(lane.points.points());
            assert!((xs.min_x - 18.0).abs() < 1e-6);
            assert!((xs.max_x - 182.0).abs() < 1e-6);
            assert!(!lane.unterminated_start && !lane.unterminated_end);
        }
        assert!((ys[1] - ys[0] - 36.0).abs() < 1e-6);
        assert!((ys[2] - ys[1] - 36.0).abs() < 1e-6);
    }

    #[test]
    fn zero_turn_bound_recovers_the_straight_baseline() {
        let field = rect_field(200.0, 150.0);
        let cfg = PlannerConfig {
            max_turn: 0.0,
            ..PlannerConfig::default()
        };
        let freeform = fit_freeform(&field, &cfg).unwrap();
        let straight = crate::straights::fit_straights(&field, &cfg).unwrap();
        assert_eq!(freeform.n_lanes(), straight.n_lanes());
    }

    #[test]
    fn half_annulus_beats_straights_with_arcs() {
        let field = half_annulus();
        let cfg = PlannerConfig::default();
        let freeform = fit_freeform(&field, &cfg).unwrap();
        let straight = crate::straights::fit_straights(&field, &cfg).unwrap();
        // Radial capacity: floor((160 - 40 - 36) / 36) = 2 concentric arcs.
        assert_eq!(freeform.n_lanes(), 2, "winner: {:?}", freeform.reference);
        assert_eq!(straight.n_lanes(), 4);

        // Both lanes track circles around the origin, a width apart. The
        // ends may run straight where the lane is extended onto the flat
        // side, so judge the arc by its interior points. Lanes carry one
        // vertex per grid step (~10.16 m), so the inner arc has ~20 of them.
        let mut radii: Vec<f64> = Vec::new();
        for lane in &freeform.lanes {
            let rs: Vec<f64> = lane
                .points
                .points()
                .iter()
                .map(|p| (p.x * p.x + p.y * p.y).sqrt())
                .collect();
            assert!(rs.len() >= 15, "arc lane has substance: {} pts", rs.len());
            let interior = &rs[2..rs.len() - 2];
            let mean = interior.iter().sum::<f64>() / interior.len() as f64;
            for r in interior {
                assert!((r - mean).abs() < 1.5, "lane wobbles: {r} vs {mean}");
            }
            radii.push(mean);
        }
        radii.sort_by(f64::total_cmp);
        assert!((radii[1] - radii[0] - 36.0).abs() < 1.5, "{radii:?}");
    }

    #[test]
    fn obstacle_field_matches_the_best_straight_family() {
        let ring = Ring::new(vec![
            pt(0.0, 0.0),
            pt(200.0, 0.0),
            pt(200.0, 150.0),
            pt(0.0, 150.0),
        ])
        .unwrap();
        let field =
            FieldGeometry::new("ob", ring, vec![circle(100.0, 75.0, 12.0, 48)]).unwrap();
        let cfg = PlannerConfig::default();
        let plan = fit_freeform(&field, &cfg).unwrap();
        let straight = crate::straights::fit_straights(&field, &cfg).unwrap();
        // Any direction needs at least three row lines (minimum projected
        // span 114 m), and the middle line always crosses the 30 m dilated
        // obstacle, so the best straight family has 3 + 1 = 4 pieces. The
        // freeform fit must match it (its candidates include every straight
        // family) and nothing beats it here.
        assert_eq!(straight.n_lanes(), 4);
        assert_eq!(plan.n_lanes(), 4);
        for lane in &plan.lanes {
            for p in lane.points.points() {
                assert!(
                    field.obstacles[0].dist_to_point(*p) >= 18.0 - 0.1,
                    "lane point too close to the obstacle"
                );
            }
        }
    }

    #[test]
    fn propagation_around_an_obstacle_flags_unterminated_runs() {
        let ring = Ring::new(vec![
            pt(0.0, 0.0),
            pt(200.0, 0.0),
            pt(200.0, 150.0),
            pt(0.0, 150.0),
        ])
        .unwrap();
        let field =
            FieldGeometry::new("ob", ring, vec![circle(100.0, 75.0, 12.0, 48)]).unwrap();
        let cfg = PlannerConfig::default();
        let hs = build_headlands(&field, &cfg).unwrap();

        // Reference along the full bottom headland edge.
        let start = ring_index_near(&hs, pt(18.0, 18.0));
        let end = ring_index_near(&hs, pt(182.0, 18.0));
        let cand = ReferenceCandidate::HeadlandSegment {
            start_index: start,
            end_index: end,
            reversed: false,
        };
        let plan = evaluate_candidate(&hs, &cfg, &cand, "ob").unwrap();

        // The first offset lane splits at the dilated obstacle; the split
        // ends sit mid-field, beyond the extension cap from the side walls.
        assert!(plan.n_lanes() > 5, "splits multiply lanes: {}", plan.n_lanes());
        assert!(
            plan.lanes.iter().any(|l| l.unterminated_start || l.unterminated_end),
            "split runs must flag unterminated ends"
        );
        assert!(plan
            .warnings
            .iter()
            .any(|w| w.contains("not terminated on the headland")));
        for lane in &plan.lanes {
            for p in lane.points.points() {
                assert!(hs.admissible(*p), "lane leaves the admissible region");
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic_and_layered() {
        let field = rect_field(200.0, 150.0);
        let cfg = PlannerConfig::default();
        let hs = build_headlands(&field, &cfg).unwrap();
        let a = enumerate_candidates(&hs, &cfg);
        let b = enumerate_candidates(&hs, &cfg);
        assert_eq!(a, b);

        let n_straight = a
            .iter()
            .filter(|c| matches!(c, ReferenceCandidate::StraightLine { .. }))
            .count();
        assert_eq!(n_straight, 360);
        // Straight candidates come last.
        assert!(matches!(a[a.len() - 1], ReferenceCandidate::StraightLine { .. }));
        assert!(matches!(a[0], ReferenceCandidate::HeadlandSegment { .. }));
        // Segment candidates appear in forward/reversed pairs.
        let n_segment = a.len() - n_straight;
        assert!(n_segment > 0 && n_segment % 2 == 0);
    }
}
