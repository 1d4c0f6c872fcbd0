//! Plan emission and re-ingestion as JSON, schema `lanegrid-plan/1`.
//!
//! The document carries the configuration the plan was computed with, the
//! reference descriptor, every lane as a coordinate array, and the plan
//! warnings. Coordinates survive a round trip exactly: the serializer
//! prints the shortest decimal form that parses back to the same float.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::PlannerConfig;
use crate::error::InputError;
use crate::geometry::{Point, Polyline};
use crate::plan::{Lane, LanePlan, ReferenceCandidate};

/// Schema identifier of the emitted document.
pub const PLAN_SCHEMA: &str = "lanegrid-plan/1";

#[derive(Serialize, Deserialize)]
struct PlanDoc {
    schema: String,
    field: String,
    config: PlannerConfig,
    reference: RefDoc,
    n_lanes: usize,
    total_length: f64,
    lanes: Vec<LaneDoc>,
    warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum RefDoc {
    HeadlandSegment {
        start_index: usize,
        end_index: usize,
        reversed: bool,
    },
    StraightLine {
        angle_deg: f64,
    },
}

#[derive(Serialize, Deserialize)]
struct LaneDoc {
    index: usize,
    parent: Option<usize>,
    unterminated_start: bool,
    unterminated_end: bool,
    points: Vec<[f64; 2]>,
}

/// Serialize a plan (and the configuration that produced it) to the
/// `lanegrid-plan/1` document.
pub fn plan_to_json(plan: &LanePlan, cfg: &PlannerConfig) -> String {
    let doc = PlanDoc {
        schema: PLAN_SCHEMA.to_string(),
        field: plan.field.clone(),
        config: cfg.clone(),
        reference: match plan.reference {
            ReferenceCandidate::HeadlandSegment {
                start_index,
                end_index,
                reversed,
            } => RefDoc::HeadlandSegment {
                start_index,
                end_index,
                reversed,
            },
            ReferenceCandidate::StraightLine { angle } => RefDoc::StraightLine {
                angle_deg: angle.to_degrees(),
            },
        },
        n_lanes: plan.n_lanes(),
        total_length: plan.total_length(),
        lanes: plan
            .lanes
            .iter()
            .map(|lane| LaneDoc {
                index: lane.index,
                parent: lane.parent,
                unterminated_start: lane.unterminated_start,
                unterminated_end: lane.unterminated_end,
                points: lane.points.points().iter().map(|p| [p.x, p.y]).collect(),
            })
            .collect(),
        warnings: plan.warnings.clone(),
    };
    serde_json::to_string_pretty(&doc).expect("plan document serializes")
}

/// Parse a `lanegrid-plan/1` document back into a plan and its
/// configuration.
pub fn plan_from_json(text: &str) -> Result<(LanePlan, PlannerConfig), InputError> {
    let doc: PlanDoc = serde_json::from_str(text)?;
    if doc.schema != PLAN_SCHEMA {
        return Err(InputError::Schema(format!(
            "unsupported plan schema {:?}, expected {PLAN_SCHEMA:?}",
            doc.schema
        )));
    }
    let reference = match doc.reference {
        RefDoc::HeadlandSegment {
            start_index,
            end_index,
            reversed,
        } => ReferenceCandidate::HeadlandSegment {
            start_index,
            end_index,
            reversed,
        },
        RefDoc::StraightLine { angle_deg } => ReferenceCandidate::StraightLine {
            angle: angle_deg.to_radians(),
        },
    };
    let lanes = doc
        .lanes
        .into_iter()
        .map(|lane| {
            let points = lane.points.iter().map(|p| Point::new(p[0], p[1])).collect();
            Ok(Lane {
                index: lane.index,
                parent: lane.parent,
                points: Polyline::open(points)?,
                unterminated_start: lane.unterminated_start,
                unterminated_end: lane.unterminated_end,
            })
        })
        .collect::<Result<Vec<_>, crate::error::GeometryError>>()?;
    let plan = LanePlan {
        field: doc.field,
        reference,
        lanes,
        warnings: doc.warnings,
    };
    Ok((plan, doc.config))
}

/// Write a plan document atomically.
pub fn emit_plan(plan: &LanePlan, cfg: &PlannerConfig, path: &Path) -> Result<(), InputError> {
    super::atomic_write(path, &plan_to_json(plan, cfg))
}
