//! Error types shared across the crate.
//!
//! Three layers: [`GeometryError`] for violated preconditions of low-level
//! geometric operations, [`InputError`] for malformed field descriptions or
//! configuration, and [`PlanError`] for planning runs that terminate without
//! a feasible result. The CLI maps `InputError` to exit code 2 and
//! `PlanError` to exit code 3.

use thiserror::Error;

/// Precondition violations of geometric primitives.
#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("operating width must be positive and finite, got {0}")]
    BadWidth(f64),
    #[error("epsilon must lie in [0, 1], got {0}")]
    BadEpsilon(f64),
    #[error("spacing must be positive and finite, got {0}")]
    BadSpacing(f64),
    #[error("consecutive points coincide at ({0}, {1})")]
    CoincidentPoints(f64, f64),
    #[error("need at least {needed} distinct points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("ring boundary intersects itself")]
    SelfIntersecting,
    #[error("ring encloses no area")]
    ZeroArea,
    #[error("non-finite coordinate")]
    NonFinite,
}

/// Problems with field input files, geometry descriptions or configuration.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid GeoJSON: {0}")]
    Geojson(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid geometry: {0}")]
    Geometry(#[from] GeometryError),
    #[error("obstacle {index} is not strictly inside the field contour")]
    ObstacleOutsideField { index: usize },
    #[error("obstacles {a} and {b} overlap")]
    ObstaclesOverlap { a: usize, b: usize },
    #[error("invalid configuration: {0}")]
    BadConfig(String),
    #[error("unsupported or malformed input: {0}")]
    Schema(String),
}

/// Planning runs that cannot produce a feasible plan.
#[derive(Debug, Error)]
pub enum PlanError {
    /// Eroding the contour by half the operating width left nothing: the
    /// field is narrower than the machine.
    #[error("field narrower than operating width: headland construction left no interior")]
    FieldTooNarrow,
    /// Every enumerated reference candidate was dismissed. The log records
    /// one dismissal reason per candidate, in enumeration order.
    #[error("no feasible plan: all {} candidates dismissed", .log.len())]
    Infeasible { log: Vec<String> },
}
