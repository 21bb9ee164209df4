//! Property tests for the algebraic invariants of the models and the
//! archive machinery.

use proptest::prelude::*;

use uvaa_core::archive::{non_dominated, Archive, ArchiveEntry};
use uvaa_core::beamforming::{array_factor, directivity_gain, max_sll, ArrayConfig, DirectionGrid};
use uvaa_core::geom::{Direction, Vec3};
use uvaa_core::objective::{dominates, repair, separation_violation, ObjectiveVector, Solution};
use uvaa_core::rng::{stream_rng, streams};
use uvaa_core::rsi::sorting_evolution;
use uvaa_core::scenario::random_scenario;

const LAMBDA: f64 = 0.125;

fn dummy_solution() -> Solution {
    Solution::at_rest(&random_scenario(1, 1, 0, 0), [0, 0])
}

fn entry(values: [f64; 3], feasible: bool, violation: f64) -> ArchiveEntry {
    ArchiveEntry {
        solution: dummy_solution(),
        objectives: ObjectiveVector {
            neg_secrecy: values[0],
            max_sll_db: values[1],
            energy: values[2],
            feasible,
            violation,
        },
    }
}

prop_compose! {
    /// Small arrays with apertures the 5-degree grid resolves.
    fn array_config()(
        n in 1usize..6,
        seed in 0u64..1000,
    ) -> (Vec<Vec3>, Vec<f64>, Vec<f64>) {
        use rand::Rng;
        let mut rng = stream_rng(seed, 99, 0, 0);
        let positions: Vec<Vec3> = (0..n)
            .map(|_| Vec3::new(
                rng.gen_range(-0.12..0.12),
                rng.gen_range(-0.12..0.12),
                rng.gen_range(-0.12..0.12),
            ))
            .collect();
        let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..1.0)).collect();
        let phases: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..core::f64::consts::TAU)).collect();
        (positions, weights, phases)
    }
}

fn discrete_vector() -> impl Strategy<Value = ObjectiveVector> {
    (0..4i32, 0..4i32, 0..4i32, prop::bool::ANY, 1..5i32).prop_map(|(a, b, c, feas, v)| {
        ObjectiveVector {
            neg_secrecy: a as f64,
            max_sll_db: b as f64,
            energy: c as f64,
            feasible: feas,
            violation: if feas { 0.0 } else { v as f64 * 0.1 },
        }
    })
}

proptest! {
    #[test]
    fn af_is_translation_invariant(
        (positions, weights, phases) in array_config(),
        shift_x in -500.0..500.0f64,
        shift_y in -500.0..500.0f64,
        theta in 0.0..core::f64::consts::PI,
        phi in -3.0..3.0f64,
    ) {
        let shift = Vec3::new(shift_x, shift_y, shift_x - shift_y);
        let shifted: Vec<Vec3> = positions.iter().map(|&p| p + shift).collect();
        let a = ArrayConfig::new(&positions, &weights, &phases, LAMBDA).unwrap();
        let b = ArrayConfig::new(&shifted, &weights, &phases, LAMBDA).unwrap();
        let dir = Direction::new(theta, phi);
        prop_assert!((array_factor(&a, dir) - array_factor(&b, dir)).abs() < 1e-9);
    }

    #[test]
    fn steered_af_hits_weight_sum(
        (positions, weights, _) in array_config(),
        theta in 0.01..3.1f64,
        phi in -3.0..3.0f64,
    ) {
        let target = Direction::new(theta, phi);
        let config = ArrayConfig::steered(&positions, &weights, LAMBDA, target).unwrap();
        let total: f64 = weights.iter().sum();
        prop_assert!((array_factor(&config, target) - total).abs() < 1e-9);
    }

    #[test]
    fn weight_scaling_preserves_gain_and_sll(
        (positions, weights, _) in array_config(),
        scale in 0.01..1.0f64,
    ) {
        let grid = DirectionGrid::new(core::f64::consts::PI / 36.0, core::f64::consts::PI / 36.0);
        let target = Direction::new(1.1, 0.4);
        let scaled: Vec<f64> = weights.iter().map(|w| w * scale).collect();
        let a = ArrayConfig::steered(&positions, &weights, LAMBDA, target).unwrap();
        let b = ArrayConfig::steered(&positions, &scaled, LAMBDA, target).unwrap();
        let ga = directivity_gain(&a, target, &grid, 0.8).unwrap();
        let gb = directivity_gain(&b, target, &grid, 0.8).unwrap();
        prop_assert!((ga - gb).abs() < 1e-9);
        let ra = max_sll(&a, target, &grid, 0.2).unwrap();
        let rb = max_sll(&b, target, &grid, 0.2).unwrap();
        prop_assert!((ra - rb).abs() < 1e-9);
    }

    #[test]
    fn gain_is_bounded_by_grid_resolution(
        (positions, weights, _) in array_config(),
        theta in 0.01..3.1f64,
        phi in -3.0..3.0f64,
    ) {
        let grid = DirectionGrid::new(core::f64::consts::PI / 36.0, core::f64::consts::PI / 36.0);
        let target = Direction::new(theta, phi);
        let config = ArrayConfig::steered(&positions, &weights, LAMBDA, target).unwrap();
        let g = directivity_gain(&config, target, &grid, 1.0).unwrap();
        prop_assert!(g >= 0.0);
        prop_assert!(g <= 4.0 * core::f64::consts::PI / grid.min_cell_weight());
    }

    #[test]
    fn dominance_is_irreflexive_and_transitive(
        a in discrete_vector(),
        b in discrete_vector(),
        c in discrete_vector(),
    ) {
        prop_assert!(!dominates(&a, &a));
        if dominates(&a, &b) && dominates(&b, &c) {
            prop_assert!(dominates(&a, &c));
        }
        // Antisymmetry: both directions can never hold at once.
        prop_assert!(!(dominates(&a, &b) && dominates(&b, &a)));
    }

    #[test]
    fn repair_is_idempotent_and_in_bounds(
        seed in 0u64..500,
        x in -300.0..5500.0f64,
        y in -300.0..300.0f64,
        z in -50.0..400.0f64,
        w in -1.0..2.0f64,
        rec in 0usize..64,
    ) {
        let scenario = random_scenario(seed, 4, 1, 1);
        let mut solution = Solution::at_rest(&scenario, [0, 0]);
        solution.positions[0][1] = Vec3::new(x, y, z);
        solution.positions[1][2] = Vec3::new(x, y, z);
        solution.weights[0][3] = w;
        solution.receivers = [rec, rec / 2];
        let once = repair(solution, &scenario);
        let twice = repair(once.clone(), &scenario);
        prop_assert_eq!(&once, &twice);
        prop_assert!(once.shape_matches(&scenario));
        for i in 0..2 {
            for &p in &once.positions[i] {
                prop_assert!(scenario.swarm_boxes[i].contains(p));
            }
            for &w in &once.weights[i] {
                prop_assert!((0.0..=1.0).contains(&w));
            }
        }
    }

    #[test]
    fn archive_update_keeps_invariants(
        pool in prop::collection::vec(discrete_vector(), 1..24),
        capacity in 1usize..8,
        seed in 0u64..100,
    ) {
        let mut archive = Archive::new(capacity, 0.05);
        let mut rng = stream_rng(seed, streams::ARCHIVE, 0, 0);
        let entries: Vec<ArchiveEntry> = pool
            .iter()
            .map(|v| entry(v.values(), v.feasible, v.violation))
            .collect();
        archive.update(entries, &mut rng);

        prop_assert!(archive.len() <= capacity);
        prop_assert!(!archive.is_empty());
        for a in archive.entries() {
            for b in archive.entries() {
                prop_assert!(!dominates(&a.objectives, &b.objectives));
            }
        }
        // Feasibility-first: one feasible entry purges every infeasible one.
        if archive.entries().iter().any(|e| e.objectives.feasible) {
            prop_assert!(archive.entries().iter().all(|e| e.objectives.feasible));
        }
    }

    #[test]
    fn sorting_evolution_only_shrinks_the_dominance_front(
        pool in prop::collection::vec(discrete_vector(), 2..20),
        t in 0usize..9,
        seed in 0u64..100,
    ) {
        let entries: Vec<ArchiveEntry> = pool
            .iter()
            .map(|v| entry(v.values(), v.feasible, v.violation))
            .collect();
        let front = non_dominated(entries.clone());

        let mut archive = Archive::new(64, 0.05);
        let mut rng = stream_rng(seed, streams::ARCHIVE, t as u64, 0);
        sorting_evolution(&mut archive, entries, t, [0.9, 0.9, 0.9], &mut rng);

        prop_assert!(archive.len() <= front.len());
        for e in archive.entries() {
            prop_assert!(front.iter().any(|f| f.objectives == e.objectives));
        }
    }

    #[test]
    fn separation_violation_matches_brute_force(
        seed in 0u64..200,
        shrink in 0.0..1.0f64,
    ) {
        let scenario = random_scenario(seed, 5, 1, 1);
        let mut solution = Solution::at_rest(&scenario, [0, 0]);
        // Pull two UAVs together to provoke violations.
        let a = solution.positions[0][0];
        let b = solution.positions[0][1];
        solution.positions[0][1] = a + (b - a) * (shrink * 1e-3);
        let v = separation_violation(&solution, scenario.min_separation);
        let mut expected: f64 = 0.0;
        for positions in &solution.positions {
            for i in 0..positions.len() {
                for j in (i + 1)..positions.len() {
                    expected = expected
                        .max(scenario.min_separation - positions[i].distance(positions[j]));
                }
            }
        }
        prop_assert!((v - expected).abs() < 1e-12);
        prop_assert!(v >= 0.0);
    }
}

#[test]
fn random_scenarios_always_validate() {
    for seed in 0..100 {
        let s = random_scenario(seed, 16, 2, 2);
        s.validate()
            .unwrap_or_else(|e| panic!("seed {seed} produced invalid scenario: {e}"));
    }
}
