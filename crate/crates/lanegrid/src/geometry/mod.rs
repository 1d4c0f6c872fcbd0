//! Planar geometry primitives in field-local metric coordinates (metres).
//!
//! Everything downstream — headland construction, lane propagation, the
//! straight-lane baseline — is built from the small vocabulary defined here:
//! points, open/closed polylines, simple rings, densification, the
//! perpendicular offset step used to derive one lane from its predecessor,
//! and point/segment predicates. Ring offsetting (erosion/dilation) lives in
//! the [`offset`] submodule.
//!
//! Conventions: rings are stored counter-clockwise, so the enclosed region
//! lies to the left when walking the boundary. Angles are radians measured
//! counter-clockwise from the positive x-axis.

mod offset;

pub use offset::{offset_ring, OffsetDirection};

use crate::error::GeometryError;

/// A point in field-local coordinates, metres.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn dist_sq(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    /// Midpoint of `self` and `other`.
    pub fn mid(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// 2D cross product (z-component of the 3D cross product).
pub fn cross(a: Point, b: Point) -> f64 {
    a.x * b.y - a.y * b.x
}

pub fn dot(a: Point, b: Point) -> f64 {
    a.x * b.x + a.y * b.y
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug)]
pub struct Bbox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Bbox {
    pub fn of(points: &[Point]) -> Bbox {
        let mut b = Bbox {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for p in points {
            b.min_x = b.min_x.min(p.x);
            b.min_y = b.min_y.min(p.y);
            b.max_x = b.max_x.max(p.x);
            b.max_y = b.max_y.max(p.y);
        }
        b
    }

    pub fn contains(&self, p: Point, pad: f64) -> bool {
        p.x >= self.min_x - pad
            && p.x <= self.max_x + pad
            && p.y >= self.min_y - pad
            && p.y <= self.max_y + pad
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }
}

/// Largest admissible grid spacing for a path discretised at operating width
/// `width`: `2 * width * sqrt(1 - epsilon^2)`.
///
/// Keeping consecutive grid points at most this far apart guarantees that a
/// point whose distance to every grid point is at least `width` has distance
/// at least `epsilon * width` to the continuous path itself, so proximity
/// checks against grid points alone cannot overlook a violation by more than
/// the factor `epsilon`.
pub fn max_spacing(width: f64, epsilon: f64) -> Result<f64, GeometryError> {
    if !width.is_finite() || width <= 0.0 {
        return Err(GeometryError::BadWidth(width));
    }
    if !epsilon.is_finite() || !(0.0..=1.0).contains(&epsilon) {
        return Err(GeometryError::BadEpsilon(epsilon));
    }
    Ok(max_spacing_value(width, epsilon))
}

/// `max_spacing` without validation, for callers holding already-checked
/// parameters.
pub(crate) fn max_spacing_value(width: f64, epsilon: f64) -> f64 {
    debug_assert!(width > 0.0 && (0.0..=1.0).contains(&epsilon));
    2.0 * width * (1.0 - epsilon * epsilon).sqrt()
}

/// One perpendicular offset step: heading of the pair `(p, next)` and the
/// point at distance `width` to the *left* of the pair's midpoint.
///
/// Returns `(heading, offset_point)` where `heading = atan2(dy, dx)` and the
/// offset direction is `heading + pi/2`. This is the elementary move that
/// derives a lane point from a consecutive point pair of the previous lane.
pub fn offset_step(p: Point, next: Point, width: f64) -> Result<(f64, Point), GeometryError> {
    if !p.is_finite() || !next.is_finite() || !width.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    let d = next - p;
    if d.x == 0.0 && d.y == 0.0 {
        return Err(GeometryError::CoincidentPoints(p.x, p.y));
    }
    let heading = d.y.atan2(d.x);
    let normal = heading + std::f64::consts::FRAC_PI_2;
    let q = p.mid(next) + Point::new(normal.cos(), normal.sin()) * width;
    Ok((heading, q))
}

/// Minimum Euclidean distance from `p` to a finite point set.
/// Returns positive infinity for an empty set.
pub fn min_point_distance(p: Point, points: &[Point]) -> f64 {
    points
        .iter()
        .map(|q| p.dist_sq(*q))
        .fold(f64::INFINITY, f64::min)
        .sqrt()
}

/// Distance from point `p` to the segment `a`-`b`.
pub(crate) fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len_sq = dot(ab, ab);
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let t = (dot(p - a, ab) / len_sq).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    cross(b - a, c - a)
}

/// Whether segments `a0`-`a1` and `b0`-`b1` intersect. Shared endpoints,
/// endpoint-on-interior touches and collinear overlaps all count.
pub fn segment_intersects(a0: Point, a1: Point, b0: Point, b1: Point) -> bool {
    let d1 = orient(b0, b1, a0);
    let d2 = orient(b0, b1, a1);
    let d3 = orient(a0, a1, b0);
    let d4 = orient(a0, a1, b1);

    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    // Collinear or touching configurations: test each zero-orientation
    // endpoint for containment in the other segment's bounding range.
    let on = |p: Point, a: Point, b: Point| -> bool {
        p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
    };
    (d1 == 0.0 && on(a0, b0, b1))
        || (d2 == 0.0 && on(a1, b0, b1))
        || (d3 == 0.0 && on(b0, a0, a1))
        || (d4 == 0.0 && on(b1, a0, a1))
}

/// Proper intersection of segments `a0`-`a1` (parameter `t`) and `b0`-`b1`
/// (parameter `u`), both in `[0, 1]`. Returns `None` for parallel segments.
pub(crate) fn segment_intersection(
    a0: Point,
    a1: Point,
    b0: Point,
    b1: Point,
) -> Option<(f64, f64)> {
    let r = a1 - a0;
    let s = b1 - b0;
    let denom = cross(r, s);
    if denom == 0.0 {
        return None;
    }
    let t = cross(b0 - a0, s) / denom;
    let u = cross(b0 - a0, r) / denom;
    if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) {
        Some((t, u))
    } else {
        None
    }
}

/// Intersection of the *line* through `a0`-`a1` with the *line* through
/// `b0`-`b1`, as parameters `(t, u)` unclamped. `None` for parallels.
pub(crate) fn line_intersection(a0: Point, a1: Point, b0: Point, b1: Point) -> Option<(f64, f64)> {
    let r = a1 - a0;
    let s = b1 - b0;
    let denom = cross(r, s);
    if denom == 0.0 {
        return None;
    }
    let t = cross(b0 - a0, s) / denom;
    let u = cross(b0 - a0, r) / denom;
    Some((t, u))
}

/// An open or closed chain of points. Closed chains do not repeat the first
/// point; the closing segment is implied.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    points: Vec<Point>,
    closed: bool,
}

impl Polyline {
    /// An open chain of at least two points with no coincident neighbours.
    pub fn open(points: Vec<Point>) -> Result<Polyline, GeometryError> {
        Self::build(points, false)
    }

    /// A closed chain of at least three points; the last point must not
    /// repeat the first (the closing edge is implied).
    pub fn closed(points: Vec<Point>) -> Result<Polyline, GeometryError> {
        Self::build(points, true)
    }

    fn build(points: Vec<Point>, closed: bool) -> Result<Polyline, GeometryError> {
        let needed = if closed { 3 } else { 2 };
        if points.len() < needed {
            return Err(GeometryError::TooFewPoints {
                needed,
                got: points.len(),
            });
        }
        for p in &points {
            if !p.is_finite() {
                return Err(GeometryError::NonFinite);
            }
        }
        for w in points.windows(2) {
            if w[0] == w[1] {
                return Err(GeometryError::CoincidentPoints(w[0].x, w[0].y));
            }
        }
        if closed && points[points.len() - 1] == points[0] {
            return Err(GeometryError::CoincidentPoints(points[0].x, points[0].y));
        }
        Ok(Polyline { points, closed })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Segments in order, including the closing segment for closed chains.
    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.points.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }

    pub fn length(&self) -> f64 {
        self.segments().map(|(a, b)| a.dist(b)).sum()
    }

    /// Distance from `p` to the nearest point of the chain.
    pub fn dist_to_point(&self, p: Point) -> f64 {
        self.segments()
            .map(|(a, b)| dist_point_segment(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Densify a polyline: each segment longer than `spacing` is subdivided into
/// `ceil(len / spacing)` equal parts. Original vertices are all preserved, so
/// the traced shape is unchanged; only the vertex density increases.
pub fn interpolate_polyline(line: &Polyline, spacing: f64) -> Result<Polyline, GeometryError> {
    if !spacing.is_finite() || spacing <= 0.0 {
        return Err(GeometryError::BadSpacing(spacing));
    }
    let mut out = Vec::with_capacity(line.points.len());
    for (a, b) in line.segments() {
        out.push(a);
        let len = a.dist(b);
        let parts = (len / spacing).ceil() as usize;
        for k in 1..parts {
            let t = k as f64 / parts as f64;
            out.push(a + (b - a) * t);
        }
    }
    if !line.closed {
        out.push(line.points[line.points.len() - 1]);
    }
    Polyline::build(out, line.closed)
}

/// Resample a polyline onto a uniform grid: vertices at equal arc-length
/// steps no larger than `spacing`, the first and last input vertex kept
/// exactly. Unlike [`interpolate_polyline`] this also coarsens — output
/// vertices lie on the input's chords, so the traced shape may deviate by
/// the chord sag. Use it where downstream logic assumes one step ≈ one
/// grid interval (turn limits, index-gap blocking).
pub fn resample_polyline(line: &Polyline, spacing: f64) -> Result<Polyline, GeometryError> {
    if !spacing.is_finite() || spacing <= 0.0 {
        return Err(GeometryError::BadSpacing(spacing));
    }
    let segs: Vec<(Point, Point)> = line.segments().collect();
    let total: f64 = segs.iter().map(|(a, b)| a.dist(*b)).sum();
    let n = (total / spacing).ceil().max(1.0) as usize;
    let step = total / n as f64;

    let mut out = Vec::with_capacity(n + 1);
    out.push(line.points[0]);
    let mut walked = 0.0;
    let mut seg = 0;
    for k in 1..n {
        let target = k as f64 * step;
        while seg < segs.len() - 1 && walked + segs[seg].0.dist(segs[seg].1) < target {
            walked += segs[seg].0.dist(segs[seg].1);
            seg += 1;
        }
        let (a, b) = segs[seg];
        let t = ((target - walked) / a.dist(b)).clamp(0.0, 1.0);
        out.push(a + (b - a) * t);
    }
    if !line.closed {
        out.push(line.points[line.points.len() - 1]);
    }
    // Float dust can land an interpolated vertex exactly on a neighbour.
    out.dedup_by(|a, b| a == b);
    Polyline::build(out, line.closed)
}

/// A simple closed boundary, stored counter-clockwise.
#[derive(Clone, Debug)]
pub struct Ring {
    points: Vec<Point>,
    bbox: Bbox,
}

impl Ring {
    /// Validates and normalises: at least three points, finite, no coincident
    /// neighbours, simple (no self-intersection), nonzero area. Clockwise
    /// input is reversed to counter-clockwise.
    pub fn new(points: Vec<Point>) -> Result<Ring, GeometryError> {
        // Drop an explicitly repeated closing point.
        let mut points = points;
        if points.len() > 1 && points[0] == points[points.len() - 1] {
            points.pop();
        }
        let line = Polyline::closed(points)?;
        let mut points = line.points;

        let area2 = signed_area2(&points);
        if area2.abs() < 1e-9 {
            return Err(GeometryError::ZeroArea);
        }
        if area2 < 0.0 {
            points.reverse();
        }
        if !is_simple(&points) {
            return Err(GeometryError::SelfIntersecting);
        }
        let bbox = Bbox::of(&points);
        Ok(Ring { points, bbox })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn bbox(&self) -> Bbox {
        self.bbox
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.points.len();
        (0..n).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }

    /// Enclosed area in square metres.
    pub fn area(&self) -> f64 {
        0.5 * signed_area2(&self.points)
    }

    /// Enclosed area in hectares.
    pub fn area_ha(&self) -> f64 {
        self.area() / 10_000.0
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.dist(b)).sum()
    }

    /// Distance from `p` to the boundary.
    pub fn dist_to_point(&self, p: Point) -> f64 {
        self.edges()
            .map(|(a, b)| dist_point_segment(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    /// Even-odd containment test. Points within `1e-9` of the boundary count
    /// as inside, so lanes terminating exactly on a headland are not lost to
    /// rounding.
    pub fn contains(&self, p: Point) -> bool {
        if !self.bbox.contains(p, 1e-9) {
            return false;
        }
        if self.dist_to_point(p) <= 1e-9 {
            return true;
        }
        // Ray cast towards +x with the half-open vertex rule: an edge counts
        // when exactly one endpoint lies strictly above the ray.
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x_hit = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if x_hit > p.x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn to_polyline(&self) -> Polyline {
        Polyline {
            points: self.points.clone(),
            closed: true,
        }
    }

    /// Resample the boundary so consecutive vertices are at most `spacing`
    /// apart, preserving every original vertex.
    pub fn densified(&self, spacing: f64) -> Result<Ring, GeometryError> {
        let dense = interpolate_polyline(&self.to_polyline(), spacing)?;
        let bbox = self.bbox;
        Ok(Ring {
            points: dense.points,
            bbox,
        })
    }
}

/// Twice the signed area of the closed chain (positive for counter-clockwise).
pub(crate) fn signed_area2(points: &[Point]) -> f64 {
    let n = points.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = points[i];
        let b = points[(i + 1) % n];
        acc += cross(a, b);
    }
    acc
}

/// Whether the closed chain has no self-intersections besides shared
/// endpoints of consecutive edges.
pub(crate) fn is_simple(points: &[Point]) -> bool {
    let n = points.len();
    for i in 0..n {
        let (a0, a1) = (points[i], points[(i + 1) % n]);
        for j in (i + 1)..n {
            // Skip adjacent edges (including the first/last pair).
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (b0, b1) = (points[j], points[(j + 1) % n]);
            if segment_intersects(a0, a1, b0, b1) {
                return false;
            }
        }
    }
    true
}

/// Even-odd containment test against a raw point loop (see [`Ring::contains`]).
pub fn point_in_ring(p: Point, ring: &Ring) -> bool {
    ring.contains(p)
}

/// Enclosed area of a ring in hectares.
pub fn ring_area_ha(ring: &Ring) -> f64 {
    ring.area_ha()
}
