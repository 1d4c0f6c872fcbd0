//! Data model of a fitted lane plan, shared by the freeform planner and the
//! straight-lane baseline.

use crate::geometry::Polyline;

/// The seed a plan grows from.
#[derive(Clone, Debug, PartialEq)]
pub enum ReferenceCandidate {
    /// A contiguous piece of the headland ring: grid indices walked from
    /// `start_index` forward (with wrap-around) to `end_index`. `reversed`
    /// traverses that same piece in the opposite direction, which mirrors
    /// the side the first offset is taken towards.
    HeadlandSegment {
        start_index: usize,
        end_index: usize,
        reversed: bool,
    },
    /// A family of parallel straight rows with direction
    /// `(sin angle, cos angle)` — `angle` is a bearing in radians, zero
    /// pointing along +y, growing clockwise towards +x.
    StraightLine { angle: f64 },
}

impl ReferenceCandidate {
    /// Compact label for dismissal logs and reports.
    pub fn describe(&self) -> String {
        match self {
            ReferenceCandidate::HeadlandSegment {
                start_index,
                end_index,
                reversed,
            } => format!(
                "headland segment {start_index}..{end_index}{}",
                if *reversed { " reversed" } else { "" }
            ),
            ReferenceCandidate::StraightLine { angle } => {
                format!("straight rows at {:.1} deg", angle.to_degrees())
            }
        }
    }
}

/// One interior lane.
#[derive(Clone, Debug)]
pub struct Lane {
    /// 1-based creation order within the plan; offsetting proceeds outward
    /// from the reference, so lower indices sit closer to it.
    pub index: usize,
    /// `index` of the lane this one was offset from; `None` for lanes
    /// derived directly from the reference (or for straight rows, which
    /// have no offset ancestry).
    pub parent: Option<usize>,
    /// Grid points of the lane, resampled to the lane grid spacing.
    pub points: Polyline,
    /// Whether an end could not be extended onto the headland within the
    /// extension cap: the machine cannot enter or leave the lane there
    /// directly from the headland.
    pub unterminated_start: bool,
    pub unterminated_end: bool,
}

impl Lane {
    pub fn length(&self) -> f64 {
        self.points.length()
    }
}

/// A complete fitted plan for one field.
#[derive(Clone, Debug)]
pub struct LanePlan {
    /// Field name the plan belongs to.
    pub field: String,
    /// The seed that produced it.
    pub reference: ReferenceCandidate,
    /// Interior lanes in creation order. The headland pass itself is not a
    /// lane and is never counted.
    pub lanes: Vec<Lane>,
    /// Non-fatal observations (headland construction notes, unterminated
    /// lane ends), deterministic order.
    pub warnings: Vec<String>,
}

impl LanePlan {
    /// Number of interior lanes — the quantity both planners minimise, since
    /// every lane costs one headland-to-interior transition pair.
    pub fn n_lanes(&self) -> usize {
        self.lanes.len()
    }

    /// Combined length of all lanes, metres.
    pub fn total_length(&self) -> f64 {
        self.lanes.iter().map(Lane::length).sum()
    }
}
