use anyhow::anyhow;

use uvaa_core::scenario::random_scenario;

use crate::formats::{to_json_pretty, write_file, ScenarioFile};
use crate::{runtime, usage, CliResult, GenScenarioArgs};

pub fn run(args: GenScenarioArgs) -> CliResult {
    if args.n_uav == 0 {
        return Err(usage(anyhow!("--n-uav must be >= 1")));
    }
    let scenario = random_scenario(args.seed, args.n_uav, args.n_known, args.n_unknown);
    if let Some(parent) = args.out.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(runtime)?;
        }
    }
    let file = ScenarioFile::from_scenario(&scenario);
    write_file(&args.out, &to_json_pretty(&file).map_err(runtime)?).map_err(runtime)?;
    println!(
        "scenario seed={} n_uav={} known={} unknown={} -> {}",
        args.seed,
        args.n_uav,
        args.n_known,
        args.n_unknown,
        args.out.display()
    );
    Ok(())
}
