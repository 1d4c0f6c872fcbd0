//! Headland and interior-lane planning for agricultural fields.
//!
//! Given a field contour (with optional interior obstacles) and a machinery
//! operating width, this crate
//!
//! * constructs headland paths by eroding the contour — and dilating
//!   obstacles — by half the operating width ([`headland`]);
//! * fits interior lanes freeform: a reference path is selected along the
//!   headland and offset sideways, lane by lane, at the operating width,
//!   following whatever curvature the contour dictates ([`freeform`]);
//! * fits the conventional baseline of parallel straight lanes swept over
//!   all directions ([`straights`]);
//! * compares the two, the point being that curvature-following lanes often
//!   need markedly fewer lanes — and therefore fewer headland-to-interior
//!   transitions — than the best straight arrangement.
//!
//! Synthetic benchmark fields live in [`corpus`]; GeoJSON input, plan JSON,
//! SVG rendering and report output in [`io`]. All computation happens in
//! field-local metric coordinates (metres).

pub mod config;
pub mod corpus;
pub mod error;
pub mod freeform;
pub mod geometry;
pub mod headland;
pub mod io;
pub mod plan;
pub mod straights;

pub use config::PlannerConfig;
pub use error::{GeometryError, InputError, PlanError};
pub use freeform::{check_constraints, evaluate_candidate, fit_freeform};
pub use headland::{build_headlands, FieldGeometry, HeadlandSet};
pub use io::geojson::load_field;
pub use io::report::{run_compare, ComparisonRow};
pub use plan::{Lane, LanePlan, ReferenceCandidate};
pub use straights::{fit_straights, sweep_angles, AngleSweep};
