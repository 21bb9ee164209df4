use anyhow::anyhow;

use uvaa_core::beamforming::DirectionGrid;
use uvaa_core::channel::uvaa_states;

use crate::commands::load_scenario_with_grid;
use crate::formats::{load_solution, pattern_csv, write_file};
use crate::manifest::{ensure_out_dir, sha256_file, Manifest};
use crate::{runtime, usage, CliResult, PatternArgs};

pub fn run(args: PatternArgs) -> CliResult {
    if !(args.swarm == 1 || args.swarm == 2) {
        return Err(usage(anyhow!("--swarm must be 1 or 2, got {}", args.swarm)));
    }
    let scenario = load_scenario_with_grid(&args.scenario, args.grid_deg)?;
    let solution = load_solution(&args.solution).map_err(usage)?;
    if !solution.shape_matches(&scenario) {
        return Err(usage(anyhow!("solution shape does not match the scenario")));
    }

    let grid = DirectionGrid::from_params(&scenario.array);
    let states = uvaa_states(&scenario, &grid, &solution).map_err(runtime)?;
    let state = &states[args.swarm - 1];

    let out = ensure_out_dir(&args.out).map_err(runtime)?;
    let mut manifest = Manifest::new(
        "pattern",
        &args.scenario,
        sha256_file(&args.scenario).map_err(runtime)?,
        0,
    )
    .with_solution(&args.solution, sha256_file(&args.solution).map_err(runtime)?);

    write_file(&out.join("pattern.csv"), &pattern_csv(&grid, &state.pattern.cell_af))
        .map_err(runtime)?;
    manifest.add_artifact(&out, "pattern.csv").map_err(runtime)?;
    manifest.finalize(&out).map_err(runtime)?;

    println!(
        "pattern swarm={} cells={} gain={} max_sll_db={}",
        args.swarm,
        grid.len(),
        state.pattern.gain,
        uvaa_core::beamforming::ratio_to_db(state.pattern.max_sll)
    );
    Ok(())
}
