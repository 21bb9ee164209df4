pub mod baseline;
pub mod evaluate;
pub mod gen_scenario;
pub mod optimize;
pub mod pattern;
pub mod robustness;

use std::path::Path;

use crate::{formats, usage, CliError};
use uvaa_core::Scenario;

/// Load a scenario, optionally overriding its direction-grid resolution
/// (both steps) from a `--grid-deg` flag.
pub(crate) fn load_scenario_with_grid(path: &Path, grid_deg: f64) -> Result<Scenario, CliError> {
    let mut scenario = formats::load_scenario(path).map_err(usage)?;
    if grid_deg > 0.0 {
        scenario.array.theta_step = grid_deg.to_radians();
        scenario.array.phi_step = grid_deg.to_radians();
        scenario.validate().map_err(usage)?;
    }
    Ok(scenario)
}

/// Stable one-line result summary printed by optimize and baseline.
pub(crate) fn summary_line(
    objectives: &uvaa_core::ObjectiveVector,
    algorithm: &str,
    seed: u64,
) -> String {
    format!(
        "best f1_bps={} f2_db={} f3_j={} feasible={} algo={} seed={}",
        objectives.secrecy_capacity(),
        objectives.max_sll_db,
        objectives.energy,
        objectives.feasible,
        algorithm,
        seed
    )
}
