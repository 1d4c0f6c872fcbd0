//! Browser bindings for the planner.
//!
//! Every export is a plain string-to-string function: fields travel as
//! GeoJSON, configuration and results as JSON, drawings as SVG documents
//! embedded in the result. Failures come back as `{"error": "..."}` rather
//! than thrown exceptions, so the page handles exactly one result shape.
//! On non-wasm targets the exports are ordinary Rust functions, which keeps
//! them testable on the host without a browser runtime.

use lanegrid::io::geojson::{field_to_geojson, parse_field};
use lanegrid::io::plan_json::plan_to_json;
use lanegrid::io::report::ComparisonRow;
use lanegrid::io::svg::svg_string;
use lanegrid::{
    build_headlands, corpus, fit_freeform, fit_straights, sweep_angles, FieldGeometry, LanePlan,
    PlannerConfig,
};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn err_json(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Parse the two inputs every operation takes. `config_json` is a partial
/// planner-configuration document — missing fields take their defaults, an
/// empty string takes all of them. Distances are metres, `max_turn` radians.
fn parse_inputs(
    field_geojson: &str,
    config_json: &str,
) -> Result<(FieldGeometry, PlannerConfig), String> {
    let field = parse_field(field_geojson, "field").map_err(|e| e.to_string())?;
    let cfg: PlannerConfig = if config_json.trim().is_empty() {
        PlannerConfig::default()
    } else {
        serde_json::from_str(config_json).map_err(|e| format!("configuration: {e}"))?
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok((field, cfg))
}

fn summarise(field: &FieldGeometry, cfg: &PlannerConfig, plan: &LanePlan, mode: &str) -> serde_json::Value {
    // The drawing is decoration; a headland failure would already have
    // failed the fit, so `None` here only drops the green ring.
    let headlands = build_headlands(field, cfg).ok();
    json!({
        "field": plan.field,
        "mode": mode,
        "n_lanes": plan.n_lanes(),
        "total_length_m": plan.total_length(),
        "reference": plan.reference.describe(),
        "warnings": plan.warnings,
        "svg": svg_string(field, headlands.as_ref(), Some(plan)),
        "plan": serde_json::from_str::<serde_json::Value>(&plan_to_json(plan, cfg))
            .expect("plan serialisation is valid JSON"),
    })
}

/// Names of the built-in demonstration fields, as a JSON array.
#[wasm_bindgen]
pub fn demo_field_names() -> String {
    let names: Vec<String> = corpus::standard_specs().into_iter().map(|s| s.name).collect();
    json!(names).to_string()
}

/// GeoJSON for one built-in demonstration field, by name.
#[wasm_bindgen]
pub fn demo_field(name: &str) -> String {
    match corpus::standard_corpus().into_iter().find(|f| f.name == name) {
        Some(field) => field_to_geojson(&field),
        None => err_json(format!("unknown demo field {name:?}")),
    }
}

/// Fit lanes with one planner. `mode` selects `"freeform"` (headland-shaped
/// lanes) or `"straights"` (the best parallel family). Returns lane count,
/// total length, warnings, the full plan document and an SVG drawing.
#[wasm_bindgen]
pub fn plan_field(field_geojson: &str, config_json: &str, mode: &str) -> String {
    let (field, cfg) = match parse_inputs(field_geojson, config_json) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    let fit = match mode {
        "freeform" => fit_freeform(&field, &cfg),
        "straights" => fit_straights(&field, &cfg),
        other => {
            return err_json(format!(
                "unknown mode {other:?}; expected \"freeform\" or \"straights\""
            ))
        }
    };
    match fit {
        Ok(plan) => summarise(&field, &cfg, &plan, mode).to_string(),
        Err(e) => err_json(e),
    }
}

/// Run both planners on the same field and report them side by side,
/// including the lane-count delta the comparison report would print.
#[wasm_bindgen]
pub fn compare_planners(field_geojson: &str, config_json: &str) -> String {
    let (field, cfg) = match parse_inputs(field_geojson, config_json) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    let straight = match fit_straights(&field, &cfg) {
        Ok(p) => p,
        Err(e) => return err_json(format!("straight planner: {e}")),
    };
    let freeform = match fit_freeform(&field, &cfg) {
        Ok(p) => p,
        Err(e) => return err_json(format!("freeform planner: {e}")),
    };
    let row = ComparisonRow::new(
        &field.name,
        field.area_ha(),
        straight.n_lanes(),
        freeform.n_lanes(),
    );
    json!({
        "field": row.field_name,
        "size_ha": row.size_ha,
        "n_straights": row.n_straights,
        "n_freeform": row.n_freeform,
        "delta_abs": row.delta_abs,
        "delta_pct": row.delta_pct,
        "straights": summarise(&field, &cfg, &straight, "straights"),
        "freeform": summarise(&field, &cfg, &freeform, "freeform"),
    })
    .to_string()
}

/// Lane counts of the straight baseline over the whole direction grid:
/// `entries` is `[[angle_deg, n_lanes], ...]` ascending, `best` the winning
/// direction (fewest lanes, ties to the smallest angle).
#[wasm_bindgen]
pub fn sweep_directions(field_geojson: &str, config_json: &str) -> String {
    let (field, cfg) = match parse_inputs(field_geojson, config_json) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    match sweep_angles(&field, &cfg) {
        Ok(sweep) => {
            let (angle, n) = sweep.best();
            json!({
                "field": sweep.field,
                "entries": sweep.entries,
                "best_angle_deg": angle,
                "best_n_lanes": n,
            })
            .to_string()
        }
        Err(e) => err_json(e),
    }
}
