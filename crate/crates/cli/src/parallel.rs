//! Work-stealing population evaluation. Results are collected in input
//! order and every evaluation is a pure function, so the thread count can
//! never change the outcome of a run.

use rayon::prelude::*;

use uvaa_core::moalo::BatchEvaluator;
use uvaa_core::objective::Objective;
use uvaa_core::{ObjectiveVector, Solution};

pub struct RayonEvaluator;

impl BatchEvaluator for RayonEvaluator {
    fn evaluate_batch(
        &self,
        objective: &Objective<'_>,
        population: &[Solution],
    ) -> Vec<ObjectiveVector> {
        population
            .par_iter()
            .map(|s| {
                objective
                    .evaluate(s)
                    .expect("optimizer populations are shape-valid")
            })
            .collect()
    }
}

/// Configure the global thread pool; 0 keeps rayon's default (all cores).
pub fn init_threads(threads: usize) -> anyhow::Result<()> {
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| anyhow::anyhow!("cannot configure {threads} threads: {e}"))?;
    }
    Ok(())
}
