//! Decision variables, the minimized objective vector
//! `(-secrecy, max SLL, energy)`, feasibility-first Pareto dominance and
//! bound repair.

use alloc::vec::Vec;

use crate::beamforming::{ratio_to_db, DirectionGrid};
use crate::channel::{secrecy_from_states, uvaa_states, EavesdropperSet, SecrecyReport};
use crate::energy::reconfiguration_energy;
use crate::error::Result;
use crate::geom::Vec3;
use crate::scenario::Scenario;

/// One candidate solution: per-swarm UAV positions, per-swarm excitation
/// weights in [0, 1], and the two receiver indices. `receivers[0]` indexes a
/// UAV of swarm 2 (the receiver of UVAA 1's transmission) and `receivers[1]`
/// a UAV of swarm 1; both are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub positions: [Vec<Vec3>; 2],
    pub weights: [Vec<f64>; 2],
    pub receivers: [usize; 2],
}

impl Solution {
    /// The "do not move" solution: original positions, all weights 1.
    pub fn at_rest(scenario: &Scenario, receivers: [usize; 2]) -> Self {
        let n = scenario.n_uav();
        Solution {
            positions: scenario.original_positions.clone(),
            weights: [alloc::vec![1.0; n], alloc::vec![1.0; n]],
            receivers,
        }
    }

    /// Number of continuous dimensions (3 per UAV plus one weight per UAV).
    pub fn continuous_dims(n_uav: usize) -> usize {
        2 * n_uav * 3 + 2 * n_uav
    }

    pub fn shape_matches(&self, scenario: &Scenario) -> bool {
        let n = scenario.n_uav();
        self.positions.iter().all(|p| p.len() == n)
            && self.weights.iter().all(|w| w.len() == n)
            && self.receivers.iter().all(|&r| r < n)
    }
}

/// The minimized objective triple plus the separation-constraint status.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveVector {
    /// `-C_KE` in bps (minimized; more negative is better).
    pub neg_secrecy: f64,
    /// Worst of the two per-UVAA maximum sidelobe levels, in dB (minimized).
    pub max_sll_db: f64,
    /// Reconfiguration energy in joules (minimized).
    pub energy: f64,
    pub feasible: bool,
    /// Largest pairwise-separation deficit in meters; 0 iff feasible.
    pub violation: f64,
}

impl ObjectiveVector {
    /// The triple in minimized order.
    pub fn values(&self) -> [f64; 3] {
        [self.neg_secrecy, self.max_sll_db, self.energy]
    }

    /// Known secrecy capacity `C_KE` in bps (maximized form of objective 1).
    pub fn secrecy_capacity(&self) -> f64 {
        -self.neg_secrecy
    }
}

/// Feasibility-first Pareto dominance: a feasible solution dominates any
/// infeasible one; two infeasible solutions compare by violation; two
/// feasible solutions compare componentwise with at least one strict
/// improvement.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    match (a.feasible, b.feasible) {
        (true, false) => true,
        (false, true) => false,
        (false, false) => a.violation < b.violation,
        (true, true) => {
            let av = a.values();
            let bv = b.values();
            let mut strict = false;
            for o in 0..3 {
                if av[o] > bv[o] {
                    return false;
                }
                if av[o] < bv[o] {
                    strict = true;
                }
            }
            strict
        }
    }
}

/// Clamp a solution into the box/weight/index bounds. The pairwise
/// separation constraint is deliberately not repaired; feasibility-first
/// dominance handles it.
pub fn repair(mut solution: Solution, scenario: &Scenario) -> Solution {
    let n = scenario.n_uav();
    for i in 0..2 {
        let swarm_box = &scenario.swarm_boxes[i];
        for p in &mut solution.positions[i] {
            *p = swarm_box.clamp(*p);
        }
        for w in &mut solution.weights[i] {
            *w = w.clamp(0.0, 1.0);
        }
        solution.receivers[i] %= n;
    }
    solution
}

/// Largest pairwise-separation deficit within either swarm.
pub fn separation_violation(solution: &Solution, min_separation: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for positions in &solution.positions {
        for (j, &a) in positions.iter().enumerate() {
            for &b in positions.iter().skip(j + 1) {
                let deficit = min_separation - a.distance(b);
                if deficit > worst {
                    worst = deficit;
                }
            }
        }
    }
    worst
}

/// Objective evaluator with a precomputed direction grid, shareable
/// read-only across threads.
pub struct Objective<'a> {
    pub scenario: &'a Scenario,
    pub grid: DirectionGrid,
}

impl<'a> Objective<'a> {
    pub fn new(scenario: &'a Scenario) -> Self {
        Objective { scenario, grid: DirectionGrid::from_params(&scenario.array) }
    }

    pub fn with_grid(scenario: &'a Scenario, grid: DirectionGrid) -> Self {
        Objective { scenario, grid }
    }

    /// Evaluate the full objective vector of a shape-valid solution.
    pub fn evaluate(&self, solution: &Solution) -> Result<ObjectiveVector> {
        let (vector, _) = self.evaluate_with_report(solution)?;
        Ok(vector)
    }

    /// Evaluate and also return the known-set secrecy report backing
    /// objective 1.
    pub fn evaluate_with_report(
        &self,
        solution: &Solution,
    ) -> Result<(ObjectiveVector, SecrecyReport)> {
        let states = uvaa_states(self.scenario, &self.grid, solution)?;
        let report = secrecy_from_states(self.scenario, &states, EavesdropperSet::Known)?;

        let max_sll_db = states
            .iter()
            .map(|s| ratio_to_db(s.pattern.max_sll))
            .fold(f64::NEG_INFINITY, f64::max);

        let energy = reconfiguration_energy(
            &self.scenario.original_positions,
            &solution.positions,
            &self.scenario.energy,
        )?;

        let violation = separation_violation(solution, self.scenario.min_separation);
        Ok((
            ObjectiveVector {
                neg_secrecy: -report.capacity,
                max_sll_db,
                energy,
                feasible: violation == 0.0,
                violation,
            },
            report,
        ))
    }
}
