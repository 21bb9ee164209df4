//! Monte Carlo degradation analysis of a fixed solution under phase
//! synchronization error, PSK-codebook CSI quantization and UAV position
//! jitter.
//!
//! Perturbations act on the evaluation inputs only: steering phases are
//! computed for the nominal geometry and then noised or quantized, and
//! jitter displaces the airframes after phase synchronization, so the
//! nominal phases are applied at the drifted positions.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::beamforming::{ratio_to_db, steering_phases, ArrayConfig, DirectionGrid};
use crate::channel::{secrecy_from_states, uvaa_states_with, EavesdropperSet};
use crate::error::{Error, Result};
use crate::geom::{Direction, Vec3};
use crate::math;
use crate::objective::Solution;
use crate::rng::{stream_rng, streams};
use crate::scenario::Scenario;

const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// What to perturb and how strongly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PerturbKind {
    /// Gaussian phase noise with variance
    /// `omega_c^2 q1^2 dt + omega_c^2 q2^2 dt^3 / 3`.
    Phase { carrier_omega: f64, q1: f64, q2: f64, delta_t: f64 },
    /// Steering phases quantized to an M-point PSK codebook.
    Csi { codebook: u32 },
    /// Positions displaced uniformly within a ball of this radius (m).
    Jitter { drift: f64 },
}

impl PerturbKind {
    /// Phase-noise parameters sized for the given carrier wavelength; the
    /// defaults produce a phase standard deviation of a few degrees.
    pub fn phase_defaults(wavelength: f64) -> PerturbKind {
        PerturbKind::Phase {
            carrier_omega: math::TAU * SPEED_OF_LIGHT / wavelength,
            q1: 1e-10,
            q2: 1e-12,
            delta_t: 1e-3,
        }
    }

    /// Standard deviation of the phase error, radians (zero for the other
    /// kinds).
    pub fn phase_std(&self) -> f64 {
        match *self {
            PerturbKind::Phase { carrier_omega, q1, q2, delta_t } => {
                let w2 = carrier_omega * carrier_omega;
                math::sqrt(w2 * q1 * q1 * delta_t + w2 * q2 * q2 * delta_t * delta_t * delta_t / 3.0)
            }
            _ => 0.0,
        }
    }
}

/// A full perturbation study description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbSpec {
    pub kind: PerturbKind,
    pub trials: usize,
    pub seed: u64,
}

impl PerturbSpec {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Validation("trials must be >= 1".into()));
        }
        match self.kind {
            PerturbKind::Csi { codebook } => {
                if !codebook.is_power_of_two() || codebook < 2 {
                    return Err(Error::Validation(alloc::format!(
                        "CSI codebook size must be a power of two >= 2, got {codebook}"
                    )));
                }
            }
            PerturbKind::Jitter { drift } => {
                if !(drift >= 0.0) {
                    return Err(Error::Validation("jitter drift must be >= 0".into()));
                }
            }
            PerturbKind::Phase { carrier_omega, q1, q2, delta_t } => {
                if !(carrier_omega > 0.0) || q1 < 0.0 || q2 < 0.0 || !(delta_t > 0.0) {
                    return Err(Error::Validation("invalid phase-noise parameters".into()));
                }
            }
        }
        Ok(())
    }
}

/// The evaluation inputs after one perturbation trial: physical positions
/// plus the initial phases each element actually applies.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbedInputs {
    pub positions: [Vec<Vec3>; 2],
    pub phases: [Vec<f64>; 2],
}

/// Nearest point of the M-PSK codebook `{2 pi m / M}` in circular distance.
pub fn quantize_phase(phase: f64, codebook: u32) -> f64 {
    let step = math::TAU / codebook as f64;
    let wrapped = math::wrap_angle(phase);
    let idx = math::round(wrapped / step) as u32 % codebook;
    idx as f64 * step
}

/// Steering phases each swarm would apply for the nominal geometry.
fn nominal_phases(scenario: &Scenario, solution: &Solution) -> Result<[Vec<f64>; 2]> {
    let mut phases: [Vec<f64>; 2] = [Vec::new(), Vec::new()];
    for i in 0..2 {
        let n = solution.positions[i].len();
        let mut center = Vec3::ZERO;
        for &p in &solution.positions[i] {
            center = center + p;
        }
        center = center * (1.0 / n as f64);
        let receiver = solution.positions[1 - i][solution.receivers[i]];
        let direction = Direction::between(center, receiver);
        let zeros = alloc::vec![0.0; n];
        let config = ArrayConfig::new(
            &solution.positions[i],
            &solution.weights[i],
            &zeros,
            scenario.comm.wavelength,
        )?;
        phases[i] = steering_phases(&config, direction);
    }
    Ok(phases)
}

/// Apply one perturbation trial. Deterministic for a fixed `(seed, trial)`.
pub fn perturb(
    scenario: &Scenario,
    solution: &Solution,
    spec: &PerturbSpec,
    trial: usize,
) -> Result<PerturbedInputs> {
    spec.validate()?;
    let mut rng = stream_rng(spec.seed, streams::TRIAL, trial as u64, 0);
    let mut positions = solution.positions.clone();
    let mut phases = nominal_phases(scenario, solution)?;

    match spec.kind {
        PerturbKind::Phase { .. } => {
            let sigma = spec.kind.phase_std();
            let noise = Normal::new(0.0, sigma)
                .map_err(|_| Error::Validation("invalid phase-noise std dev".into()))?;
            for swarm in phases.iter_mut() {
                for phase in swarm.iter_mut() {
                    *phase = math::wrap_angle(*phase + noise.sample(&mut rng));
                }
            }
        }
        PerturbKind::Csi { codebook } => {
            for swarm in phases.iter_mut() {
                for phase in swarm.iter_mut() {
                    *phase = quantize_phase(*phase, codebook);
                }
            }
        }
        PerturbKind::Jitter { drift } => {
            for swarm in positions.iter_mut() {
                for p in swarm.iter_mut() {
                    *p = *p + ball_sample(&mut rng) * drift;
                }
            }
        }
    }

    Ok(PerturbedInputs { positions, phases })
}

/// Uniform sample from the unit ball by rejection from the cube.
fn ball_sample<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        if v.dot(v) <= 1.0 {
            return v;
        }
    }
}

/// Evaluate secrecy capacity (known set) and worst SLL for explicit
/// evaluation inputs.
pub fn evaluate_perturbed(
    scenario: &Scenario,
    solution: &Solution,
    inputs: &PerturbedInputs,
    grid: &DirectionGrid,
) -> Result<(f64, f64)> {
    let states = uvaa_states_with(
        scenario,
        grid,
        &inputs.positions,
        &solution.weights,
        solution.receivers,
        Some(&inputs.phases),
    )?;
    let report = secrecy_from_states(scenario, &states, EavesdropperSet::Known)?;
    let sll_db = states
        .iter()
        .map(|s| ratio_to_db(s.pattern.max_sll))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((report.capacity, sll_db))
}

/// Mean, population standard deviation and 5th/95th percentiles of a sample
/// set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub mean: f64,
    pub std_dev: f64,
    pub p5: f64,
    pub p95: f64,
}

impl SummaryStats {
    pub fn from_samples(samples: &[f64]) -> SummaryStats {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n;
        let mut sorted = samples.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("samples are never NaN"));
        SummaryStats {
            mean,
            std_dev: math::sqrt(var),
            p5: percentile(&sorted, 0.05),
            p95: percentile(&sorted, 0.95),
        }
    }
}

/// Linear-interpolation percentile of an ascending sample list.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let last = sorted.len() - 1;
    let pos = q * last as f64;
    let lo = math::floor(pos) as usize;
    let hi = (lo + 1).min(last);
    let frac = pos - lo as f64;
    sorted[lo] * (1.0 - frac) + sorted[hi] * frac
}

/// Per-trial samples of f1 (known secrecy capacity, bps) and f2 (worst SLL,
/// dB) with their aggregates.
#[derive(Debug, Clone, PartialEq)]
pub struct RobustnessStats {
    pub f1_samples: Vec<f64>,
    pub f2_samples: Vec<f64>,
    pub f1: SummaryStats,
    pub f2: SummaryStats,
}

/// Evaluate `spec.trials` perturbed copies of `solution` and aggregate.
pub fn monte_carlo(
    scenario: &Scenario,
    solution: &Solution,
    spec: &PerturbSpec,
) -> Result<RobustnessStats> {
    spec.validate()?;
    let grid = DirectionGrid::from_params(&scenario.array);
    let mut f1_samples = Vec::with_capacity(spec.trials);
    let mut f2_samples = Vec::with_capacity(spec.trials);
    for trial in 0..spec.trials {
        let inputs = perturb(scenario, solution, spec, trial)?;
        let (f1, f2) = evaluate_perturbed(scenario, solution, &inputs, &grid)?;
        f1_samples.push(f1);
        f2_samples.push(f2);
    }
    let f1 = SummaryStats::from_samples(&f1_samples);
    let f2 = SummaryStats::from_samples(&f2_samples);
    Ok(RobustnessStats { f1_samples, f2_samples, f1, f2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::Objective;
    use crate::scenario::random_scenario;
    use core::f64::consts::PI;

    fn fixture() -> (Scenario, Solution) {
        let scenario = random_scenario(3, 4, 2, 1);
        let solution = Solution::at_rest(&scenario, [1, 2]);
        (scenario, solution)
    }

    #[test]
    fn zero_drift_keeps_positions() {
        let (scenario, solution) = fixture();
        let spec = PerturbSpec { kind: PerturbKind::Jitter { drift: 0.0 }, trials: 1, seed: 1 };
        let inputs = perturb(&scenario, &solution, &spec, 0).unwrap();
        assert_eq!(inputs.positions, solution.positions);
    }

    #[test]
    fn csi_quantization_nearest_point() {
        // 0.3 pi against the 4-point codebook {0, pi/2, pi, 3 pi/2}.
        let q = quantize_phase(0.3 * PI, 4);
        assert!((q - 0.5 * PI).abs() < 1e-12);
        // Wrap-around: just below 2 pi snaps to 0.
        assert_eq!(quantize_phase(math::TAU - 0.01, 16), 0.0);
    }

    #[test]
    fn csi_error_is_bounded_by_pi_over_m() {
        let mut rng = stream_rng(2, streams::TRIAL, 0, 0);
        for &m in &[4u32, 8, 16, 32, 64] {
            for _ in 0..200 {
                let phase = rng.gen::<f64>() * math::TAU;
                let q = quantize_phase(phase, m);
                let mut diff = math::fabs(phase - q) % math::TAU;
                if diff > PI {
                    diff = math::TAU - diff;
                }
                assert!(diff <= PI / m as f64 + 1e-12);
            }
        }
    }

    #[test]
    fn quiet_phase_noise_equals_nominal() {
        let (scenario, solution) = fixture();
        let kind = PerturbKind::Phase {
            carrier_omega: math::TAU * SPEED_OF_LIGHT / scenario.comm.wavelength,
            q1: 0.0,
            q2: 0.0,
            delta_t: 1e-3,
        };
        let spec = PerturbSpec { kind, trials: 1, seed: 7 };
        let stats = monte_carlo(&scenario, &solution, &spec).unwrap();

        let nominal = Objective::new(&scenario)
            .evaluate(&solution)
            .unwrap();
        assert!((stats.f1.mean - nominal.secrecy_capacity()).abs() < 1e-6);
        assert!((stats.f2.mean - nominal.max_sll_db).abs() < 1e-9);
        assert_eq!(stats.f1.std_dev, 0.0);
        assert_eq!(stats.f1.p5, stats.f1.p95);
    }

    #[test]
    fn phase_defaults_give_a_few_degrees() {
        let kind = PerturbKind::phase_defaults(0.125);
        let sigma_deg = kind.phase_std().to_degrees();
        assert!(sigma_deg > 0.5 && sigma_deg < 10.0, "sigma = {sigma_deg} deg");
    }

    #[test]
    fn trials_are_deterministic() {
        let (scenario, solution) = fixture();
        let spec = PerturbSpec { kind: PerturbKind::Jitter { drift: 1.0 }, trials: 5, seed: 9 };
        let a = monte_carlo(&scenario, &solution, &spec).unwrap();
        let b = monte_carlo(&scenario, &solution, &spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn finer_codebooks_never_hurt_on_average() {
        let (scenario, solution) = fixture();
        let mut means = Vec::new();
        for &m in &[16u32, 32, 64] {
            let spec = PerturbSpec { kind: PerturbKind::Csi { codebook: m }, trials: 100, seed: 5 };
            means.push(monte_carlo(&scenario, &solution, &spec).unwrap().f1.mean);
        }
        assert!(means[1] >= means[0]);
        assert!(means[2] >= means[1]);
    }

    #[test]
    fn sll_spread_shrinks_with_drift() {
        let (scenario, solution) = fixture();
        let spread = |drift: f64| {
            let spec = PerturbSpec { kind: PerturbKind::Jitter { drift }, trials: 100, seed: 11 };
            monte_carlo(&scenario, &solution, &spec).unwrap().f2.std_dev
        };
        let none = spread(0.0);
        let small = spread(0.5);
        let large = spread(2.0);
        assert!(none < 1e-9, "zero drift still spread {none}");
        assert!(none <= small + 1e-12);
        assert!(small <= large);
    }

    #[test]
    fn bad_specs_are_rejected() {
        let bad = [
            PerturbSpec { kind: PerturbKind::Jitter { drift: 1.0 }, trials: 0, seed: 0 },
            PerturbSpec { kind: PerturbKind::Csi { codebook: 12 }, trials: 5, seed: 0 },
            PerturbSpec { kind: PerturbKind::Csi { codebook: 1 }, trials: 5, seed: 0 },
            PerturbSpec { kind: PerturbKind::Jitter { drift: -0.5 }, trials: 5, seed: 0 },
        ];
        for spec in bad {
            assert!(spec.validate().is_err(), "{spec:?} should be rejected");
        }
        let ok = PerturbSpec { kind: PerturbKind::Csi { codebook: 16 }, trials: 5, seed: 0 };
        assert!(ok.validate().is_ok());
    }

    #[test]
    fn single_trial_stats_collapse() {
        let (scenario, solution) = fixture();
        let spec = PerturbSpec { kind: PerturbKind::Jitter { drift: 0.0 }, trials: 1, seed: 1 };
        let stats = monte_carlo(&scenario, &solution, &spec).unwrap();
        assert_eq!(stats.f1_samples.len(), 1);
        assert_eq!(stats.f1.mean, stats.f1.p5);
        assert_eq!(stats.f1.mean, stats.f1.p95);
        assert_eq!(stats.f1.std_dev, 0.0);
    }
}
