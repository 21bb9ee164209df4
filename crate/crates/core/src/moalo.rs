//! Vanilla multi-objective ant-lion optimizer: bounded Pareto archive with
//! niche crowding, roulette anchor selection, a shrinking-boundary random
//! walk guide, and the averaged solution update. The enhanced variant in
//! [`crate::rsi`] shares the same engine.

use alloc::vec::Vec;

use rand::Rng;

use crate::archive::{Archive, ArchiveEntry};
use crate::error::{Error, Result};
use crate::objective::{repair, Objective, ObjectiveVector, Solution};
use crate::rng::{stream_rng, streams};
use crate::rsi::{
    integer_update, random_walk_init, sampled_walk, sorting_evolution, ThresholdSnapshot,
};
use crate::scenario::Scenario;

/// Optimizer configuration shared by both algorithm variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgoParams {
    /// Population size N.
    pub population: usize,
    /// Iteration budget.
    pub max_iterations: usize,
    /// Pareto archive capacity.
    pub capacity: usize,
    /// Niche radius as a fraction of the normalized objective range.
    pub niche_fraction: f64,
    /// Threshold fractions of the sorting-based evolution, per objective.
    pub delta: [f64; 3],
    /// Master seed; every stream in a run derives from it.
    pub seed: u64,
    /// Meters per step of the random-walk initialization.
    pub walk_step: f64,
}

impl Default for AlgoParams {
    fn default() -> Self {
        AlgoParams {
            population: 50,
            max_iterations: 300,
            capacity: 50,
            niche_fraction: 0.05,
            delta: [0.9, 0.9, 0.9],
            seed: 0,
            walk_step: 5.0,
        }
    }
}

impl AlgoParams {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(Error::Validation("population must be >= 2".into()));
        }
        if self.max_iterations < 1 {
            return Err(Error::Validation("max_iterations must be >= 1".into()));
        }
        if self.capacity < 1 {
            return Err(Error::Validation("archive capacity must be >= 1".into()));
        }
        if !(self.niche_fraction > 0.0) {
            return Err(Error::Validation("niche_fraction must be > 0".into()));
        }
        for (o, &d) in self.delta.iter().enumerate() {
            if !(d > 0.0 && d < 1.0) {
                return Err(Error::Validation(alloc::format!(
                    "delta{} must lie in (0, 1), got {d}",
                    o + 1
                )));
            }
        }
        if !(self.walk_step > 0.0) {
            return Err(Error::Validation("walk_step must be > 0".into()));
        }
        Ok(())
    }
}

/// Evaluates a whole generation. The serial implementation lives here; the
/// CLI crate provides a work-stealing one. Implementations must preserve
/// input order and share no mutable state across solutions, so thread count
/// can never change results.
pub trait BatchEvaluator: Sync {
    fn evaluate_batch(
        &self,
        objective: &Objective<'_>,
        population: &[Solution],
    ) -> Vec<ObjectiveVector>;
}

/// Straightforward in-order evaluation.
pub struct SerialEvaluator;

impl BatchEvaluator for SerialEvaluator {
    fn evaluate_batch(
        &self,
        objective: &Objective<'_>,
        population: &[Solution],
    ) -> Vec<ObjectiveVector> {
        population
            .iter()
            .map(|s| {
                objective
                    .evaluate(s)
                    .expect("optimizer populations are shape-valid")
            })
            .collect()
    }
}

/// Archive statistics after one iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    /// Best known secrecy capacity in the archive, bps.
    pub best_secrecy: f64,
    /// Best (lowest) worst-sidelobe level, dB.
    pub best_sll_db: f64,
    /// Lowest reconfiguration energy, joules.
    pub best_energy: f64,
    pub archive_size: usize,
}

/// Per-run convergence data.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunTrace {
    pub iterations: Vec<IterationRecord>,
    /// Populated only by the sorting-based evolution.
    pub thresholds: Vec<ThresholdSnapshot>,
}

/// Final archive plus convergence trace.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub archive: Archive,
    pub trace: RunTrace,
}

/// Uniform-random initial population: positions uniform inside each swarm
/// box, weights uniform in [0, 1], receivers uniform.
pub fn uniform_init<R: Rng>(scenario: &Scenario, count: usize, rng: &mut R) -> Vec<Solution> {
    let n = scenario.n_uav();
    (0..count)
        .map(|_| {
            let mut positions: [Vec<crate::geom::Vec3>; 2] = [Vec::new(), Vec::new()];
            for (i, swarm) in positions.iter_mut().enumerate() {
                let b = scenario.swarm_boxes[i];
                for _ in 0..n {
                    swarm.push(crate::geom::Vec3::new(
                        rng.gen_range(b.min.x..=b.max.x),
                        rng.gen_range(b.min.y..=b.max.y),
                        rng.gen_range(b.min.z..=b.max.z),
                    ));
                }
            }
            let mut weights: [Vec<f64>; 2] = [Vec::new(), Vec::new()];
            for swarm in weights.iter_mut() {
                for _ in 0..n {
                    swarm.push(rng.gen::<f64>());
                }
            }
            let receivers = [rng.gen_range(0..n), rng.gen_range(0..n)];
            Solution { positions, weights, receivers }
        })
        .collect()
}

/// The shrinking-boundary divisor of the guide walk.
fn boundary_shrink(t: usize, t_max: usize) -> f64 {
    let ratio = t as f64 / t_max as f64;
    let scale = if ratio > 0.95 {
        1e6
    } else if ratio > 0.9 {
        1e5
    } else if ratio > 0.75 {
        1e4
    } else if ratio > 0.5 {
        1e3
    } else if ratio > 0.1 {
        1e2
    } else {
        1.0
    };
    1.0 + scale * ratio
}

fn walk_coordinate<R: Rng>(
    anchor: f64,
    lo: f64,
    hi: f64,
    t: usize,
    t_max: usize,
    shrink: f64,
    rng: &mut R,
) -> f64 {
    let seq = sampled_walk(t_max, rng);
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &v in &seq {
        min = min.min(v);
        max = max.max(v);
    }
    let half_width = (hi - lo) / shrink;
    let low = anchor - half_width;
    let frac = (seq[t] - min) / (max - min);
    low + frac * 2.0 * half_width
}

/// Guide solution X^R: one shrinking-interval random walk per continuous
/// dimension, centered on the anchor; integer variables are copied from the
/// anchor (the integer update rule handles them downstream).
pub fn guide_solution<R: Rng>(
    anchor: &Solution,
    t: usize,
    params: &AlgoParams,
    scenario: &Scenario,
    rng: &mut R,
) -> Solution {
    let shrink = boundary_shrink(t, params.max_iterations);
    let t_max = params.max_iterations;
    let mut guide = anchor.clone();
    for i in 0..2 {
        let b = scenario.swarm_boxes[i];
        for p in &mut guide.positions[i] {
            for axis in 0..3 {
                let (lo, hi) = b.axis_bounds(axis);
                let value = match axis {
                    0 => &mut p.x,
                    1 => &mut p.y,
                    _ => &mut p.z,
                };
                *value = walk_coordinate(*value, lo, hi, t, t_max, shrink, rng);
            }
        }
        for w in &mut guide.weights[i] {
            *w = walk_coordinate(*w, 0.0, 1.0, t, t_max, shrink, rng);
        }
    }
    repair(guide, scenario)
}

/// One solution update: the continuous part is the element-wise mean of the
/// guide X^R and the archive anchor X^A; the receiver pair follows the
/// integer update rule; the result is repaired into bounds.
pub fn update_solution<R: Rng>(
    guide: &Solution,
    anchor: &Solution,
    current: &Solution,
    scenario: &Scenario,
    rng: &mut R,
) -> Solution {
    let n = scenario.n_uav();
    let mut next = guide.clone();
    for i in 0..2 {
        for (p, &a) in next.positions[i].iter_mut().zip(&anchor.positions[i]) {
            *p = (*p + a) * 0.5;
        }
        for (w, &a) in next.weights[i].iter_mut().zip(&anchor.weights[i]) {
            *w = (*w + a) * 0.5;
        }
    }
    next.receivers = integer_update(anchor.receivers, current.receivers, n, rng);
    repair(next, scenario)
}

pub(crate) enum InitMethod {
    Uniform,
    RandomWalk,
}

pub(crate) enum ArchiveStrategy {
    DominanceCrowding,
    SortingEvolution,
}

pub(crate) fn run_engine(
    scenario: &Scenario,
    params: &AlgoParams,
    init: InitMethod,
    strategy: ArchiveStrategy,
    evaluator: &dyn BatchEvaluator,
    observer: &mut dyn FnMut(usize, &Archive),
) -> Result<RunOutcome> {
    scenario.validate()?;
    params.validate()?;

    let objective = Objective::new(scenario);
    let mut init_rng = stream_rng(params.seed, streams::INIT, 0, 0);
    let mut population = match init {
        InitMethod::Uniform => uniform_init(scenario, params.population, &mut init_rng),
        InitMethod::RandomWalk => {
            random_walk_init(scenario, params.population, params.walk_step, &mut init_rng)
        }
    };

    let mut archive = Archive::new(params.capacity, params.niche_fraction);
    let mut trace = RunTrace::default();

    for t in 0..params.max_iterations {
        let evaluations = evaluator.evaluate_batch(&objective, &population);
        let entries: Vec<ArchiveEntry> = population
            .iter()
            .cloned()
            .zip(evaluations)
            .map(|(solution, objectives)| ArchiveEntry { solution, objectives })
            .collect();

        let mut archive_rng = stream_rng(params.seed, streams::ARCHIVE, t as u64, 0);
        match strategy {
            ArchiveStrategy::DominanceCrowding => archive.update(entries, &mut archive_rng),
            ArchiveStrategy::SortingEvolution => {
                let snapshot =
                    sorting_evolution(&mut archive, entries, t, params.delta, &mut archive_rng);
                trace.thresholds.push(snapshot);
            }
        }

        trace.iterations.push(record_iteration(t, &archive));
        observer(t, &archive);

        let counts = archive.niche_counts();
        for member in 0..params.population {
            let mut rng = stream_rng(params.seed, streams::UPDATE, t as u64, member as u64);
            let anchor = archive
                .roulette_select_with_counts(&counts, &mut rng)?
                .solution
                .clone();
            let guide = guide_solution(&anchor, t, params, scenario, &mut rng);
            population[member] =
                update_solution(&guide, &anchor, &population[member], scenario, &mut rng);
        }
    }

    Ok(RunOutcome { archive, trace })
}

fn record_iteration(t: usize, archive: &Archive) -> IterationRecord {
    let mut best_secrecy = f64::NEG_INFINITY;
    let mut best_sll_db = f64::INFINITY;
    let mut best_energy = f64::INFINITY;
    for e in archive.entries() {
        best_secrecy = best_secrecy.max(e.objectives.secrecy_capacity());
        best_sll_db = best_sll_db.min(e.objectives.max_sll_db);
        best_energy = best_energy.min(e.objectives.energy);
    }
    IterationRecord {
        iteration: t,
        best_secrecy,
        best_sll_db,
        best_energy,
        archive_size: archive.len(),
    }
}

/// Vanilla MOALO: uniform-random initialization and plain
/// dominance-plus-crowding archive maintenance.
pub fn run_moalo(
    scenario: &Scenario,
    params: &AlgoParams,
    evaluator: &dyn BatchEvaluator,
) -> Result<RunOutcome> {
    run_moalo_observed(scenario, params, evaluator, &mut |_, _| {})
}

/// [`run_moalo`] with a per-iteration archive observer.
pub fn run_moalo_observed(
    scenario: &Scenario,
    params: &AlgoParams,
    evaluator: &dyn BatchEvaluator,
    observer: &mut dyn FnMut(usize, &Archive),
) -> Result<RunOutcome> {
    run_engine(
        scenario,
        params,
        InitMethod::Uniform,
        ArchiveStrategy::DominanceCrowding,
        evaluator,
        observer,
    )
}
