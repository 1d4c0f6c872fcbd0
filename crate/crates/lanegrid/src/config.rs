//! Planner configuration shared by the freeform planner and the straight
//! baseline.

use serde::{Deserialize, Serialize};

use crate::error::InputError;
use crate::geometry::max_spacing_value;

/// Tuning parameters of a planning run. All distances are metres, angles
/// radians unless a field name says otherwise.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct PlannerConfig {
    /// Machinery operating width `w`: the spacing between neighbouring
    /// lanes, and twice the contour-to-headland distance.
    pub operating_width: f64,
    /// Grid resolution factor in (0, 1). Grids are spaced so that clearance
    /// checks against grid points alone underestimate the true clearance to
    /// the continuous path by at most this factor.
    pub epsilon: f64,
    /// Largest admissible heading change between consecutive grid point
    /// pairs of a lane.
    pub max_turn: f64,
    /// Index gap from which two grid points of the same lane count as
    /// non-neighbours for the self-proximity check: a lane may not come
    /// within the operating width of itself further along its own course.
    pub blocking_interval: usize,
    /// Spacing of enumerated reference start positions along the headland.
    pub candidate_stride: f64,
    /// Reference lengths to enumerate. An empty list selects the ten
    /// fractions 0.1, 0.2, ..., 1.0 of the headland circumference.
    pub candidate_lengths: Vec<f64>,
    /// Angular resolution of the straight-lane direction sweep, degrees.
    pub angle_grid_deg: f64,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        PlannerConfig {
            operating_width: 36.0,
            epsilon: 0.99,
            max_turn: 135f64.to_radians(),
            blocking_interval: 20,
            candidate_stride: 25.0,
            candidate_lengths: Vec::new(),
            angle_grid_deg: 1.0,
        }
    }
}

impl PlannerConfig {
    /// Check parameter ranges and cross-parameter consistency.
    pub fn validate(&self) -> Result<(), InputError> {
        let bad = |msg: String| Err(InputError::BadConfig(msg));
        if !self.operating_width.is_finite() || self.operating_width <= 0.0 {
            return bad(format!(
                "operating width must be positive, got {}",
                self.operating_width
            ));
        }
        if !self.epsilon.is_finite() || self.epsilon <= 0.0 || self.epsilon >= 1.0 {
            return bad(format!(
                "epsilon must lie strictly between 0 and 1, got {}",
                self.epsilon
            ));
        }
        if !self.max_turn.is_finite() || self.max_turn < 0.0 || self.max_turn > std::f64::consts::PI
        {
            return bad(format!(
                "max turn must lie in [0, pi] radians, got {}",
                self.max_turn
            ));
        }
        // The self-proximity exemption window must span at least the
        // operating width along the lane, otherwise genuine neighbours on
        // the grid would be flagged as self-approaches.
        let min_block = self.operating_width / self.lane_spacing();
        if (self.blocking_interval as f64) <= min_block {
            return bad(format!(
                "blocking interval {} too small for this grid: must exceed {:.1}",
                self.blocking_interval, min_block
            ));
        }
        if !self.candidate_stride.is_finite() || self.candidate_stride <= 0.0 {
            return bad(format!(
                "candidate stride must be positive, got {}",
                self.candidate_stride
            ));
        }
        for &l in &self.candidate_lengths {
            if !l.is_finite() || l <= 0.0 {
                return bad(format!("candidate lengths must be positive, got {l}"));
            }
        }
        if !self.angle_grid_deg.is_finite() || self.angle_grid_deg <= 0.0 {
            return bad(format!(
                "angle grid must be positive, got {} degrees",
                self.angle_grid_deg
            ));
        }
        Ok(())
    }

    /// Grid spacing for interior lanes (discretised at the operating width).
    pub fn lane_spacing(&self) -> f64 {
        max_spacing_value(self.operating_width, self.epsilon)
    }

    /// Grid spacing for headland paths (discretised at half the operating
    /// width, the distance a headland keeps to the contour).
    pub fn headland_spacing(&self) -> f64 {
        max_spacing_value(0.5 * self.operating_width, self.epsilon)
    }

    /// How far beyond its last grid point a lane may be extended to reach
    /// the headland.
    pub fn extension_cap(&self) -> f64 {
        2.0 * self.operating_width
    }

    /// Clearance lane points must keep from the region boundary and from
    /// obstacle headlands during propagation: `w·(1−ε²)`. This bounds the
    /// sag of one lane-grid chord on the tightest boundary arc (radius w/2,
    /// from offsetting a sharp corner), so a lane resampled onto the lane
    /// grid stays outside whatever its vertices stayed outside of:
    /// required is `√((w/2)² + d²/4) − w/2` with `d = 2w√(1−ε²)`, and
    /// `w(1−ε²)` is never below it.
    pub fn clearance_margin(&self) -> f64 {
        self.operating_width * (1.0 - self.epsilon * self.epsilon)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        let cfg = PlannerConfig::default();
        cfg.validate().unwrap();
        assert!(cfg.lane_spacing() > 10.15 && cfg.lane_spacing() < 10.16);
        assert!(cfg.headland_spacing() > 5.07 && cfg.headland_spacing() < 5.08);
        assert_eq!(cfg.extension_cap(), 72.0);
    }

    #[test]
    fn validation_rejects_out_of_range() {
        let ok = PlannerConfig::default();
        for tweak in [
            PlannerConfig { operating_width: 0.0, ..ok.clone() },
            PlannerConfig { operating_width: f64::NAN, ..ok.clone() },
            PlannerConfig { epsilon: 0.0, ..ok.clone() },
            PlannerConfig { epsilon: 1.0, ..ok.clone() },
            PlannerConfig { max_turn: -0.1, ..ok.clone() },
            PlannerConfig { max_turn: 3.5, ..ok.clone() },
            PlannerConfig { blocking_interval: 3, ..ok.clone() },
            PlannerConfig { candidate_stride: 0.0, ..ok.clone() },
            PlannerConfig { candidate_lengths: vec![100.0, -5.0], ..ok.clone() },
            PlannerConfig { angle_grid_deg: 0.0, ..ok.clone() },
        ] {
            assert!(tweak.validate().is_err());
        }
    }

    #[test]
    fn partial_document_fills_defaults() {
        // A partial document fills the remaining fields from defaults.
        let cfg: PlannerConfig = serde_json::from_str(r#"{"operating_width": 24.0}"#).unwrap();
        assert_eq!(cfg.operating_width, 24.0);
        assert_eq!(cfg.blocking_interval, 20);
        cfg.validate().unwrap();
    }
}
