use anyhow::anyhow;

use uvaa_core::channel::{secrecy_report, EavesdropperSet};
use uvaa_core::objective::Objective;

use crate::commands::load_scenario_with_grid;
use crate::formats::{
    load_solution, to_json_pretty, write_file, EvaluationOut, ObjectivesOut, SecrecyOut,
};
use crate::manifest::{ensure_out_dir, sha256_file, Manifest};
use crate::{runtime, usage, CliResult, EvaluateArgs};

pub fn run(args: EvaluateArgs) -> CliResult {
    let scenario = load_scenario_with_grid(&args.scenario, args.grid_deg)?;
    let solution = load_solution(&args.solution).map_err(usage)?;
    if !solution.shape_matches(&scenario) {
        return Err(usage(anyhow!(
            "solution shape does not match the scenario ({} UAVs per swarm expected)",
            scenario.n_uav()
        )));
    }

    let objectives = Objective::new(&scenario)
        .evaluate(&solution)
        .map_err(runtime)?;
    let known = secrecy_report(&scenario, &solution, EavesdropperSet::Known).map_err(runtime)?;
    let all = secrecy_report(&scenario, &solution, EavesdropperSet::All).map_err(runtime)?;

    let report = EvaluationOut {
        objectives: ObjectivesOut::from_vector(&objectives),
        secrecy_known: SecrecyOut::from_report(&known),
        secrecy_all: SecrecyOut::from_report(&all),
    };
    let json = to_json_pretty(&report).map_err(runtime)?;
    print!("{json}");

    if let Some(dir) = &args.out {
        let out = ensure_out_dir(dir).map_err(runtime)?;
        let mut manifest = Manifest::new(
            "evaluate",
            &args.scenario,
            sha256_file(&args.scenario).map_err(runtime)?,
            0,
        )
        .with_solution(&args.solution, sha256_file(&args.solution).map_err(runtime)?);
        write_file(&out.join("evaluation.json"), &json).map_err(runtime)?;
        manifest.add_artifact(&out, "evaluation.json").map_err(runtime)?;
        manifest.finalize(&out).map_err(runtime)?;
    }
    Ok(())
}
