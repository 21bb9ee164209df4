//! The three optimizer enhancements and the full enhanced loop:
//! random-walk initialization around the original positions, sorting-based
//! population evolution with per-iteration objective thresholds, and the
//! elite/inertia/random integer update for the receiver pair.

use alloc::vec::Vec;

use rand::Rng;

use crate::archive::{non_dominated, Archive, ArchiveEntry};
use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::math;
use crate::moalo::{run_engine, AlgoParams, ArchiveStrategy, BatchEvaluator, InitMethod, RunOutcome};
use crate::objective::{repair, Solution};
use crate::scenario::Scenario;

/// Cumulative offsets of a coin-flip walk: `[0, s1, s1+s2, ...]` with
/// `s_k = +1` for a true coin and `-1` for a false one.
pub(crate) fn offsets_from_coins(coins: &[bool]) -> Vec<f64> {
    let mut seq = Vec::with_capacity(coins.len() + 1);
    let mut acc = 0.0;
    seq.push(acc);
    for &up in coins {
        acc += if up { 1.0 } else { -1.0 };
        seq.push(acc);
    }
    seq
}

/// Sample `steps` fair coins (`rand > 0.5`) and accumulate them.
pub(crate) fn sampled_walk<R: Rng>(steps: usize, rng: &mut R) -> Vec<f64> {
    let coins: Vec<bool> = (0..steps).map(|_| rng.gen::<f64>() > 0.5).collect();
    offsets_from_coins(&coins)
}

/// Initial population built from one cumulative-sum random walk per
/// position dimension: candidate `c` sits at the original positions plus
/// `walk_step` times the walk's value at index `c`, so candidate 0 starts
/// exactly at the original positions. Weights are uniform in [0, 1] and
/// receivers are `round(rand * N)` clamped into range.
pub fn random_walk_init<R: Rng>(
    scenario: &Scenario,
    count: usize,
    walk_step: f64,
    rng: &mut R,
) -> Vec<Solution> {
    let n = scenario.n_uav();
    // One walk per (swarm, uav, axis), each spanning the whole population.
    let mut walks: Vec<Vec<f64>> = Vec::with_capacity(2 * n * 3);
    for _ in 0..(2 * n * 3) {
        walks.push(sampled_walk(count, rng));
    }

    let mut solutions = Vec::with_capacity(count);
    for c in 0..count {
        let mut positions: [Vec<Vec3>; 2] = [Vec::new(), Vec::new()];
        for i in 0..2 {
            for (j, &origin) in scenario.original_positions[i].iter().enumerate() {
                let base = (i * n + j) * 3;
                positions[i].push(Vec3::new(
                    origin.x + walk_step * walks[base][c],
                    origin.y + walk_step * walks[base + 1][c],
                    origin.z + walk_step * walks[base + 2][c],
                ));
            }
        }
        let mut weights: [Vec<f64>; 2] = [Vec::new(), Vec::new()];
        for swarm in weights.iter_mut() {
            for _ in 0..n {
                swarm.push(rng.gen::<f64>());
            }
        }
        let receivers = [draw_receiver(n, rng), draw_receiver(n, rng)];
        solutions.push(repair(Solution { positions, weights, receivers }, scenario));
    }
    solutions
}

/// `round(rand * N)` can produce 0 or N under 1-based indexing; clamp into
/// [1, N] and shift to the 0-based range.
fn draw_receiver<R: Rng>(n: usize, rng: &mut R) -> usize {
    let raw = math::round(rng.gen::<f64>() * n as f64) as i64;
    (raw.clamp(1, n as i64) - 1) as usize
}

/// Elite / inertia / random update of the receiver pair: with probability
/// 1/3 each, take the archive anchor's pair, keep the current pair, or draw
/// a fresh uniform pair. One draw governs both elements.
pub fn integer_update<R: Rng>(
    anchor: [usize; 2],
    current: [usize; 2],
    n_uav: usize,
    rng: &mut R,
) -> [usize; 2] {
    let r = rng.gen::<f64>();
    if r < 1.0 / 3.0 {
        anchor
    } else if r < 2.0 / 3.0 {
        current
    } else {
        [rng.gen_range(0..n_uav), rng.gen_range(0..n_uav)]
    }
}

/// Threshold state of one sorting-evolution pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdSnapshot {
    pub iteration: usize,
    /// Objective filtered this iteration: `iteration % 3`.
    pub active: usize,
    /// Minimum of objective 1 (minimized space, `-C_KE`) over the merged
    /// non-dominated set.
    pub f1_min: f64,
    /// Minimum of objective 2 (worst SLL, dB).
    pub f2_min: f64,
    /// Maximum of objective 3 (energy, J).
    pub f3_max: f64,
    pub zeta: [f64; 3],
    /// Entries removed by the threshold pass (not counting dominance or
    /// capacity eviction).
    pub removed: usize,
}

/// Threshold anchored on a minimum: `snapshot * delta` keeps the band next
/// to the best value while the snapshot is negative (the usual case for
/// both secrecy and SLL objectives); a positive snapshot flips to
/// `snapshot / delta` so the band still extends away from the best value.
fn threshold_from_min(snapshot: f64, delta: f64) -> f64 {
    if snapshot <= 0.0 {
        snapshot * delta
    } else {
        snapshot / delta
    }
}

/// Threshold anchored on a maximum, mirroring [`threshold_from_min`].
fn threshold_from_max(snapshot: f64, delta: f64) -> f64 {
    if snapshot >= 0.0 {
        snapshot * delta
    } else {
        snapshot / delta
    }
}

/// Sorting-based population evolution: merge the population into the
/// archive, drop dominated entries, then apply the single active objective
/// threshold for this iteration and finally enforce capacity through the
/// crowding eviction.
///
/// If the threshold would empty the archive the single best entry in the
/// active objective is retained.
pub fn sorting_evolution<R: Rng>(
    archive: &mut Archive,
    population: Vec<ArchiveEntry>,
    t: usize,
    delta: [f64; 3],
    rng: &mut R,
) -> ThresholdSnapshot {
    let mut pool: Vec<ArchiveEntry> = archive.entries().to_vec();
    pool.extend(population);

    // Snapshot the merged pool before dominance removal. The order
    // matters for the energy objective: its threshold anchors on the
    // pool-wide maximum, which the population's wanderers keep inflated;
    // anchoring on the post-dominance maximum instead would shrink the
    // archive's energy ceiling geometrically over the iterations.
    let mut f1_min = f64::INFINITY;
    let mut f2_min = f64::INFINITY;
    let mut f3_max = f64::NEG_INFINITY;
    for e in &pool {
        let [g1, g2, g3] = e.objectives.values();
        f1_min = f1_min.min(g1);
        f2_min = f2_min.min(g2);
        f3_max = f3_max.max(g3);
    }
    let zeta = [
        threshold_from_min(f1_min, delta[0]),
        threshold_from_min(f2_min, delta[1]),
        threshold_from_max(f3_max, delta[2]),
    ];

    let survivors = non_dominated(pool);

    let active = t % 3;
    let mut kept: Vec<ArchiveEntry> = Vec::with_capacity(survivors.len());
    let mut best_idx = 0usize;
    let mut best_value = f64::INFINITY;
    for (idx, e) in survivors.iter().enumerate() {
        let v = e.objectives.values()[active];
        if v < best_value {
            best_value = v;
            best_idx = idx;
        }
    }
    for e in &survivors {
        if e.objectives.values()[active] <= zeta[active] {
            kept.push(e.clone());
        }
    }
    let removed = survivors.len() - kept.len();
    if kept.is_empty() {
        kept.push(survivors[best_idx].clone());
    }

    archive.set_entries(kept);
    archive.evict_to_capacity(rng);

    ThresholdSnapshot { iteration: t, active, f1_min, f2_min, f3_max, zeta, removed }
}

/// Enhanced optimizer loop: random-walk initialization, then per iteration
/// evaluate all members, update the archive through
/// [`sorting_evolution`], and rebuild every member from a roulette anchor,
/// its guide walk and the integer update.
pub fn run_moalo_rsi(
    scenario: &Scenario,
    params: &AlgoParams,
    evaluator: &dyn BatchEvaluator,
) -> Result<RunOutcome> {
    run_moalo_rsi_observed(scenario, params, evaluator, &mut |_, _| {})
}

/// [`run_moalo_rsi`] with a per-iteration archive observer.
pub fn run_moalo_rsi_observed(
    scenario: &Scenario,
    params: &AlgoParams,
    evaluator: &dyn BatchEvaluator,
    observer: &mut dyn FnMut(usize, &Archive),
) -> Result<RunOutcome> {
    run_engine(
        scenario,
        params,
        InitMethod::RandomWalk,
        ArchiveStrategy::SortingEvolution,
        evaluator,
        observer,
    )
}

/// Final-solution rule: the entry with the best secrecy capacity (minimum
/// objective 1), ties broken by lower energy, then lower SLL.
pub fn select_final(archive: &Archive) -> Result<&ArchiveEntry> {
    archive
        .entries()
        .iter()
        .min_by(|a, b| {
            let ka = (a.objectives.neg_secrecy, a.objectives.energy, a.objectives.max_sll_db);
            let kb = (b.objectives.neg_secrecy, b.objectives.energy, b.objectives.max_sll_db);
            ka.partial_cmp(&kb).expect("objective values are never NaN")
        })
        .ok_or(Error::EmptyArchive)
}
