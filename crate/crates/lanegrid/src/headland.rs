//! Field geometry and headland construction.
//!
//! A field is a simple contour ring with optional interior obstacle rings
//! (ponds, pylons, woods). The machine first works a headland pass along the
//! contour, so the headland *path* runs at half the operating width inside
//! the contour — eroding the contour by `w/2`. Obstacles get their own
//! headland at half the width outside their boundary — dilation by `w/2`.
//! Interior lanes must stay inside the eroded region and outside every
//! dilated obstacle region; both rings are also the terminal curves lanes
//! are extended onto.

use crate::config::PlannerConfig;
use crate::error::{InputError, PlanError};
use crate::geometry::{offset_ring, segment_intersects, OffsetDirection, Point, Ring};

/// A named field: contour plus interior obstacles, field-local metres.
#[derive(Clone, Debug)]
pub struct FieldGeometry {
    pub name: String,
    pub contour: Ring,
    pub obstacles: Vec<Ring>,
}

impl FieldGeometry {
    /// Validates that every obstacle lies strictly inside the contour and
    /// that obstacles are pairwise disjoint.
    pub fn new(
        name: impl Into<String>,
        contour: Ring,
        obstacles: Vec<Ring>,
    ) -> Result<FieldGeometry, InputError> {
        for (i, ob) in obstacles.iter().enumerate() {
            let strictly_inside = ob
                .points()
                .iter()
                .all(|p| contour.contains(*p) && contour.dist_to_point(*p) > 1e-9);
            if !strictly_inside || rings_interact(ob, &contour) {
                return Err(InputError::ObstacleOutsideField { index: i });
            }
        }
        for i in 0..obstacles.len() {
            for j in (i + 1)..obstacles.len() {
                if rings_interact(&obstacles[i], &obstacles[j])
                    || obstacles[i].contains(obstacles[j].points()[0])
                    || obstacles[j].contains(obstacles[i].points()[0])
                {
                    return Err(InputError::ObstaclesOverlap { a: i, b: j });
                }
            }
        }
        Ok(FieldGeometry {
            name: name.into(),
            contour,
            obstacles,
        })
    }

    /// Workable area: contour minus obstacles, hectares.
    pub fn area_ha(&self) -> f64 {
        self.contour.area_ha() - self.obstacles.iter().map(Ring::area_ha).sum::<f64>()
    }
}

/// Whether two ring boundaries touch or cross (containment not included).
fn rings_interact(a: &Ring, b: &Ring) -> bool {
    let (ba, bb) = (a.bbox(), b.bbox());
    if ba.min_x > bb.max_x || bb.min_x > ba.max_x || ba.min_y > bb.max_y || bb.min_y > ba.max_y {
        return false;
    }
    for (a0, a1) in a.edges() {
        for (b0, b1) in b.edges() {
            if segment_intersects(a0, a1, b0, b1) {
                return true;
            }
        }
    }
    false
}

/// Headland paths of a field, resampled onto the working grid.
#[derive(Clone, Debug)]
pub struct HeadlandSet {
    /// Contour eroded by half the operating width; the region lanes must
    /// stay within, and the curve the reference path is selected from.
    pub headland: Ring,
    /// Obstacles dilated by half the operating width; regions lanes must
    /// stay out of.
    pub obstacle_headlands: Vec<Ring>,
    /// Vertex spacing both rings are resampled to.
    pub grid_spacing: f64,
    /// Non-fatal observations from construction, in deterministic order.
    pub warnings: Vec<String>,
}

impl HeadlandSet {
    /// Whether a lane point may lie at `p`: inside the headland region and
    /// not strictly inside any obstacle headland. Boundary points count as
    /// admissible on both curves — lanes terminate on the headland and may
    /// touch an obstacle headland at exactly half-width clearance.
    pub fn admissible(&self, p: Point) -> bool {
        if !self.headland.contains(p) {
            return false;
        }
        !self
            .obstacle_headlands
            .iter()
            .any(|ob| ob.contains(p) && ob.dist_to_point(p) > 1e-9)
    }

    /// [`admissible`](Self::admissible), additionally requiring `margin`
    /// clearance from the region boundary and from every obstacle headland.
    pub fn admissible_with_clearance(&self, p: Point, margin: f64) -> bool {
        if !self.headland.contains(p) || self.headland.dist_to_point(p) <= margin {
            return false;
        }
        !self
            .obstacle_headlands
            .iter()
            .any(|ob| ob.contains(p) || ob.dist_to_point(p) <= margin)
    }
}

/// Construct the headland set for a field.
///
/// Erosion that leaves nothing is fatal (the field is narrower than the
/// machine). Erosion that splits the interior keeps the largest part and
/// records a warning; obstacle headlands that overlap each other or poke
/// beyond the main headland are likewise recorded, not rejected.
pub fn build_headlands(
    field: &FieldGeometry,
    cfg: &PlannerConfig,
) -> Result<HeadlandSet, PlanError> {
    let spacing = cfg.headland_spacing();
    let half = 0.5 * cfg.operating_width;
    let mut warnings = Vec::new();

    let eroded = offset_ring(&field.contour, half, OffsetDirection::Inward, spacing);
    if eroded.is_empty() {
        return Err(PlanError::FieldTooNarrow);
    }
    if eroded.len() > 1 {
        warnings.push(format!(
            "headland split into {} parts; planning on the largest ({:.2} ha)",
            eroded.len(),
            eroded[0].area_ha()
        ));
    }
    // offset_ring sorts largest-first.
    let headland = eroded
        .into_iter()
        .next()
        .expect("non-empty")
        .densified(spacing)
        .expect("spacing validated");

    let mut obstacle_headlands = Vec::with_capacity(field.obstacles.len());
    for ob in &field.obstacles {
        let dilated = offset_ring(ob, half, OffsetDirection::Outward, spacing);
        // Dilation of a simple ring always has exactly one outer boundary.
        let ring = dilated
            .into_iter()
            .next()
            .expect("dilation cannot annihilate")
            .densified(spacing)
            .expect("spacing validated");
        obstacle_headlands.push(ring);
    }

    for i in 0..obstacle_headlands.len() {
        for j in (i + 1)..obstacle_headlands.len() {
            if rings_interact(&obstacle_headlands[i], &obstacle_headlands[j]) {
                warnings.push(format!(
                    "obstacle headlands {i} and {j} overlap; the passage between the obstacles is narrower than the operating width"
                ));
            }
        }
    }
    for (i, ob) in obstacle_headlands.iter().enumerate() {
        if ob.points().iter().any(|p| !headland.contains(*p)) {
            warnings.push(format!(
                "obstacle headland {i} extends beyond the main headland; the passage to the contour is narrower than the operating width"
            ));
        }
    }

    Ok(HeadlandSet {
        headland,
        obstacle_headlands,
        grid_spacing: spacing,
        warnings,
    })
}
