//! Planner comparison rows and CSV emission: one row per field with the
//! lane counts of both planners and the freeform saving, absolute and as a
//! rounded percentage of the straight count.

use std::path::Path;

use serde::Serialize;

use crate::config::PlannerConfig;
use crate::error::{InputError, PlanError};
use crate::freeform::fit_freeform;
use crate::headland::FieldGeometry;
use crate::plan::LanePlan;
use crate::straights::{fit_straights, AngleSweep};

/// One comparison row: lane counts of both planners on a field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub field_name: String,
    pub size_ha: f64,
    pub n_straights: usize,
    pub n_freeform: usize,
    /// `n_freeform - n_straights`; negative when freeform saves lanes.
    pub delta_abs: i64,
    /// `round(100 * delta_abs / n_straights)`, half away from zero.
    pub delta_pct: i64,
}

impl ComparisonRow {
    pub fn new(field_name: &str, size_ha: f64, n_straights: usize, n_freeform: usize) -> Self {
        let delta_abs = n_freeform as i64 - n_straights as i64;
        let delta_pct = if n_straights == 0 {
            0
        } else {
            (100.0 * delta_abs as f64 / n_straights as f64).round() as i64
        };
        ComparisonRow {
            field_name: field_name.to_string(),
            size_ha,
            n_straights,
            n_freeform,
            delta_abs,
            delta_pct,
        }
    }

    fn csv_line(&self) -> String {
        format!(
            "{},{:.1},{},{},{},{}",
            self.field_name,
            self.size_ha,
            self.n_straights,
            self.n_freeform,
            self.delta_abs,
            self.delta_pct
        )
    }
}

/// Run both planners on a field and assemble the comparison row.
pub fn run_compare(field: &FieldGeometry, cfg: &PlannerConfig) -> Result<ComparisonRow, PlanError> {
    compare_with_plans(field, cfg).map(|(row, _, _)| row)
}

/// [`run_compare`], also handing back both plans for further emission.
pub fn compare_with_plans(
    field: &FieldGeometry,
    cfg: &PlannerConfig,
) -> Result<(ComparisonRow, LanePlan, LanePlan), PlanError> {
    let straight = fit_straights(field, cfg)?;
    let freeform = fit_freeform(field, cfg)?;
    let row = ComparisonRow::new(
        &field.name,
        field.area_ha(),
        straight.n_lanes(),
        freeform.n_lanes(),
    );
    Ok((row, straight, freeform))
}

pub const REPORT_HEADER: &str = "field,size_ha,n_straights,n_freeform,delta_abs,delta_pct";

/// Comparison rows as CSV text.
pub fn report_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

/// Write a comparison report atomically.
pub fn emit_report(rows: &[ComparisonRow], path: &Path) -> Result<(), InputError> {
    super::atomic_write(path, &report_csv(rows))
}

/// An angle sweep as CSV text, one row per grid angle.
pub fn sweep_csv(sweep: &AngleSweep) -> String {
    let mut out = String::from("angle_deg,n_lanes\n");
    for (angle, n) in &sweep.entries {
        let _ = std::fmt::Write::write_fmt(&mut out, format_args!("{angle},{n}\n"));
    }
    out
}

/// Write an angle sweep CSV atomically.
pub fn emit_sweep_csv(sweep: &AngleSweep, path: &Path) -> Result<(), InputError> {
    super::atomic_write(path, &sweep_csv(sweep))
}
