use uvaa_core::channel::{secrecy_report, EavesdropperSet};
use uvaa_core::objective::Objective;
use uvaa_core::scenario::laa_baseline;

use crate::commands::{load_scenario_with_grid, summary_line};
use crate::formats::{
    to_json_pretty, write_file, EvaluationOut, ObjectivesOut, SecrecyOut, SolutionFile,
};
use crate::manifest::{ensure_out_dir, sha256_file, Manifest};
use crate::{runtime, usage, BaselineArgs, CliResult};

pub fn run(args: BaselineArgs) -> CliResult {
    let scenario = load_scenario_with_grid(&args.scenario, 0.0)?;
    let solution = laa_baseline(&scenario, args.seed).map_err(usage)?;

    let out = ensure_out_dir(&args.out).map_err(runtime)?;
    let mut manifest = Manifest::new(
        "baseline",
        &args.scenario,
        sha256_file(&args.scenario).map_err(runtime)?,
        args.seed,
    );
    manifest.algorithm = Some("laa".to_string());
    manifest.record_initial(&out).map_err(runtime)?;

    let objectives = Objective::new(&scenario)
        .evaluate(&solution)
        .map_err(runtime)?;
    let known = secrecy_report(&scenario, &solution, EavesdropperSet::Known).map_err(runtime)?;
    let all = secrecy_report(&scenario, &solution, EavesdropperSet::All).map_err(runtime)?;

    write_file(
        &out.join("solution.json"),
        &to_json_pretty(&SolutionFile::from_solution(&solution)).map_err(runtime)?,
    )
    .map_err(runtime)?;
    manifest.add_artifact(&out, "solution.json").map_err(runtime)?;

    let report = EvaluationOut {
        objectives: ObjectivesOut::from_vector(&objectives),
        secrecy_known: SecrecyOut::from_report(&known),
        secrecy_all: SecrecyOut::from_report(&all),
    };
    write_file(&out.join("evaluation.json"), &to_json_pretty(&report).map_err(runtime)?)
        .map_err(runtime)?;
    manifest.add_artifact(&out, "evaluation.json").map_err(runtime)?;
    manifest.finalize(&out).map_err(runtime)?;

    println!("{}", summary_line(&objectives, "laa", args.seed));
    Ok(())
}
