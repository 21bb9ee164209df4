use anyhow::anyhow;

use uvaa_core::robustness::{monte_carlo, PerturbKind, PerturbSpec};

use crate::commands::load_scenario_with_grid;
use crate::formats::{
    load_solution, robustness_csv, to_json_pretty, write_file, RobustnessSummaryOut,
};
use crate::manifest::{ensure_out_dir, sha256_file, Manifest};
use crate::{runtime, usage, CliResult, PerturbationKind, RobustnessArgs};

pub fn run(args: RobustnessArgs) -> CliResult {
    let scenario = load_scenario_with_grid(&args.scenario, 0.0)?;
    let solution = load_solution(&args.solution).map_err(usage)?;
    if !solution.shape_matches(&scenario) {
        return Err(usage(anyhow!("solution shape does not match the scenario")));
    }

    let (kind, label) = match args.kind {
        PerturbationKind::Phase => {
            let mut kind = PerturbKind::phase_defaults(scenario.comm.wavelength);
            if let PerturbKind::Phase { ref mut q1, ref mut q2, ref mut delta_t, .. } = kind {
                *q1 = args.q1;
                *q2 = args.q2;
                *delta_t = args.delta_t;
            }
            (kind, format!("phase(q1={},q2={},dt={})", args.q1, args.q2, args.delta_t))
        }
        PerturbationKind::Csi => (
            PerturbKind::Csi { codebook: args.codebook },
            format!("csi({}-psk)", args.codebook),
        ),
        PerturbationKind::Jitter => (
            PerturbKind::Jitter { drift: args.drift },
            format!("jitter(drift={}m)", args.drift),
        ),
    };
    let spec = PerturbSpec { kind, trials: args.trials, seed: args.seed };
    spec.validate().map_err(usage)?;

    let out = ensure_out_dir(&args.out).map_err(runtime)?;
    let mut manifest = Manifest::new(
        "robustness",
        &args.scenario,
        sha256_file(&args.scenario).map_err(runtime)?,
        args.seed,
    )
    .with_solution(&args.solution, sha256_file(&args.solution).map_err(runtime)?);
    manifest.perturbation = Some(label.clone());
    manifest.record_initial(&out).map_err(runtime)?;

    let stats = monte_carlo(&scenario, &solution, &spec).map_err(runtime)?;

    write_file(&out.join("robustness.csv"), &robustness_csv(&stats)).map_err(runtime)?;
    manifest.add_artifact(&out, "robustness.csv").map_err(runtime)?;

    let summary = RobustnessSummaryOut::from_stats(label, args.trials, args.seed, &stats);
    write_file(
        &out.join("robustness_summary.json"),
        &to_json_pretty(&summary).map_err(runtime)?,
    )
    .map_err(runtime)?;
    manifest.add_artifact(&out, "robustness_summary.json").map_err(runtime)?;
    manifest.finalize(&out).map_err(runtime)?;

    println!(
        "robustness kind={} trials={} mean_f1_bps={} mean_f2_db={}",
        summary.kind, args.trials, stats.f1.mean, stats.f2.mean
    );
    Ok(())
}
