use anyhow::anyhow;

use uvaa_core::moalo::{run_moalo, IterationRecord, RunTrace};
use uvaa_core::objective::Objective;
use uvaa_core::rng::{stream_rng, streams};
use uvaa_core::rsi::{run_moalo_rsi, select_final};
use uvaa_core::scenario::laa_baseline;
use uvaa_core::{AlgoParams, Archive, ArchiveEntry};

use crate::commands::{load_scenario_with_grid, summary_line};
use crate::formats::{
    convergence_csv, thresholds_csv, to_json_pretty, write_file, ArchiveEntryOut,
};
use crate::manifest::{ensure_out_dir, sha256_file, Manifest, ParamsOut};
use crate::parallel::RayonEvaluator;
use crate::{runtime, usage, Algorithm, CliResult, OptimizeArgs};

pub fn run(args: OptimizeArgs) -> CliResult {
    let scenario = load_scenario_with_grid(&args.scenario, args.grid_deg)?;
    let params = AlgoParams {
        population: args.pop,
        max_iterations: args.iters,
        capacity: args.pop,
        delta: [args.delta1, args.delta2, args.delta3],
        seed: args.seed,
        walk_step: args.walk_step,
        ..AlgoParams::default()
    };
    params.validate().map_err(usage)?;

    let out = ensure_out_dir(&args.out).map_err(runtime)?;
    let mut manifest = Manifest::new(
        "optimize",
        &args.scenario,
        sha256_file(&args.scenario).map_err(runtime)?,
        args.seed,
    );
    manifest.algorithm = Some(args.algo.id().to_string());
    manifest.params = Some(ParamsOut {
        population: params.population,
        iterations: params.max_iterations,
        capacity: params.capacity,
        niche_fraction: params.niche_fraction,
        delta: params.delta,
        walk_step: params.walk_step,
        grid_deg: args.grid_deg,
    });
    manifest.record_initial(&out).map_err(runtime)?;

    let (archive, trace): (Archive, RunTrace) = match args.algo {
        Algorithm::MoaloRsi => {
            let outcome =
                run_moalo_rsi(&scenario, &params, &RayonEvaluator).map_err(runtime)?;
            (outcome.archive, outcome.trace)
        }
        Algorithm::Moalo => {
            let outcome = run_moalo(&scenario, &params, &RayonEvaluator).map_err(runtime)?;
            (outcome.archive, outcome.trace)
        }
        Algorithm::Laa => {
            let solution = laa_baseline(&scenario, args.seed).map_err(usage)?;
            let objectives = Objective::new(&scenario)
                .evaluate(&solution)
                .map_err(runtime)?;
            let trace = RunTrace {
                iterations: vec![IterationRecord {
                    iteration: 0,
                    best_secrecy: objectives.secrecy_capacity(),
                    best_sll_db: objectives.max_sll_db,
                    best_energy: objectives.energy,
                    archive_size: 1,
                }],
                thresholds: Vec::new(),
            };
            let mut archive = Archive::new(1, params.niche_fraction);
            let mut rng = stream_rng(args.seed, streams::ARCHIVE, 0, 0);
            archive.update(vec![ArchiveEntry { solution, objectives }], &mut rng);
            (archive, trace)
        }
    };

    let archive_out: Vec<ArchiveEntryOut> =
        archive.entries().iter().map(ArchiveEntryOut::from_entry).collect();
    write_file(&out.join("archive.json"), &to_json_pretty(&archive_out).map_err(runtime)?)
        .map_err(runtime)?;
    manifest.add_artifact(&out, "archive.json").map_err(runtime)?;

    let best = select_final(&archive)
        .map_err(|e| runtime(anyhow!("optimizer produced an empty archive: {e}")))?;
    write_file(
        &out.join("best.json"),
        &to_json_pretty(&ArchiveEntryOut::from_entry(best)).map_err(runtime)?,
    )
    .map_err(runtime)?;
    manifest.add_artifact(&out, "best.json").map_err(runtime)?;

    // The bare solution in the format evaluate/pattern/robustness consume.
    write_file(
        &out.join("best_solution.json"),
        &to_json_pretty(&crate::formats::SolutionFile::from_solution(&best.solution))
            .map_err(runtime)?,
    )
    .map_err(runtime)?;
    manifest.add_artifact(&out, "best_solution.json").map_err(runtime)?;

    write_file(&out.join("convergence.csv"), &convergence_csv(&trace)).map_err(runtime)?;
    manifest.add_artifact(&out, "convergence.csv").map_err(runtime)?;

    if args.algo == Algorithm::MoaloRsi {
        write_file(&out.join("thresholds.csv"), &thresholds_csv(&trace.thresholds))
            .map_err(runtime)?;
        manifest.add_artifact(&out, "thresholds.csv").map_err(runtime)?;
    }

    let summary = summary_line(&best.objectives, args.algo.id(), args.seed);
    manifest.finalize(&out).map_err(runtime)?;
    println!("{summary}");
    Ok(())
}
