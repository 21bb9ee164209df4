//! Legitimate air-to-air rate, colluding-eavesdropper rate under maximum
//! ratio combining, and the two secrecy capacities.

use alloc::vec::Vec;

use crate::beamforming::{array_factor, ArrayConfig, BeamPattern, DirectionGrid};
use crate::error::{Error, Result};
use crate::geom::{Direction, GroundPoint, Vec3};
use crate::math;
use crate::objective::Solution;
use crate::scenario::{CommParams, Scenario};

/// Geometry of one link from an array center to a ground node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    /// Slant distance in meters.
    pub distance: f64,
    /// Elevation angle in radians, from the horizontal at the ground node up
    /// to the array center.
    pub elevation: f64,
    /// Direction from the array center toward the node.
    pub direction: Direction,
}

impl LinkGeometry {
    /// Link from `center` down to a ground point. Errors when the two
    /// coincide.
    pub fn to_ground(center: Vec3, point: GroundPoint) -> Result<LinkGeometry> {
        let p = point.position();
        let distance = center.distance(p);
        if distance == 0.0 {
            return Err(Error::ZeroDistance);
        }
        Ok(LinkGeometry {
            distance,
            elevation: math::atan2(center.z, center.horizontal_distance(p)),
            direction: Direction::between(center, p),
        })
    }
}

/// LoS probability `(1 + b1 exp(-b2 (angle - b1)))^-1`.
///
/// `elevation` must be expressed in the unit `b1`/`b2` assume; the defaults
/// in [`CommParams`] assume degrees.
pub fn los_probability(elevation: f64, b1: f64, b2: f64) -> f64 {
    1.0 / (1.0 + b1 * math::exp(-b2 * (elevation - b1)))
}

/// SNR of one ground eavesdropper:
/// `P^t K0 G d^-alpha [P_LoS mu_LoS + P_NLoS mu_NLoS]^-1 / sigma^2`.
pub fn eavesdropper_snr(geom: &LinkGeometry, gain: f64, comm: &CommParams) -> Result<f64> {
    if geom.distance == 0.0 {
        return Err(Error::ZeroDistance);
    }
    let p_los = los_probability(geom.elevation.to_degrees(), comm.los_b1, comm.los_b2);
    let attenuation = p_los * comm.mu_los + (1.0 - p_los) * comm.mu_nlos;
    let path = math::pow(geom.distance, -comm.path_loss_exp);
    Ok(comm.tx_power * comm.path_loss_const * gain * path / (attenuation * comm.noise_power))
}

/// Combined SNR of colluding receivers under maximum ratio combining: the
/// plain sum of the branch SNRs.
pub fn mrc_combined_snr<I: IntoIterator<Item = f64>>(snrs: I) -> f64 {
    snrs.into_iter().sum()
}

/// Deterministic LoS air-to-air rate `B log2(1 + P^t K0 G d^-alpha / sigma^2)`.
pub fn a2a_rate(distance: f64, gain: f64, comm: &CommParams) -> f64 {
    let path = math::pow(distance, -comm.path_loss_exp);
    let snr = comm.tx_power * comm.path_loss_const * gain * path / comm.noise_power;
    comm.bandwidth * math::log2(1.0 + snr)
}

/// Which eavesdroppers a rate accounts for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EavesdropperSet {
    /// Detected eavesdroppers only (the optimizer's view).
    Known,
    /// Known plus unknown (post-hoc evaluation).
    All,
}

/// Per-direction rates of one transmit side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkRates {
    /// Legitimate air-to-air rate, bps.
    pub a2a: f64,
    /// Colluding-eavesdropper rate against this transmission, bps.
    pub eavesdropper: f64,
}

/// Two-way secrecy summary for one eavesdropper set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyReport {
    pub set: EavesdropperSet,
    /// Rates for UVAA 1 -> receiver and UVAA 2 -> receiver.
    pub rates: [LinkRates; 2],
    /// `min_i (R_a2a_i - R_eave_i)`; negative values are legal.
    pub capacity: f64,
}

/// The steered transmit state of one UVAA: its array configuration, sampled
/// beam pattern and the link toward its receiver in the opposite swarm.
#[derive(Debug, Clone)]
pub struct UvaaState {
    pub config: ArrayConfig,
    pub pattern: BeamPattern,
    pub center: Vec3,
    pub receiver_distance: f64,
    pub receiver_direction: Direction,
}

impl UvaaState {
    /// Gain toward a ground node, with the same normalization as the gain
    /// toward the receiver.
    pub fn gain_toward(&self, dir: Direction, eta: f64) -> f64 {
        if self.pattern.power_integral <= 0.0 {
            return 0.0;
        }
        let af = array_factor(&self.config, dir);
        4.0 * core::f64::consts::PI * af * af * eta / self.pattern.power_integral
    }
}

/// Build the steered transmit states of both UVAAs for a solution,
/// optionally with explicit initial phases (used by the robustness study;
/// `None` applies conjugate steering toward each receiver).
pub fn uvaa_states_with(
    scenario: &Scenario,
    grid: &DirectionGrid,
    positions: &[Vec<Vec3>; 2],
    weights: &[Vec<f64>; 2],
    receivers: [usize; 2],
    phases: Option<&[Vec<f64>; 2]>,
) -> Result<[UvaaState; 2]> {
    let n = scenario.n_uav();
    for i in 0..2 {
        if positions[i].len() != n || weights[i].len() != n {
            return Err(Error::ShapeMismatch(alloc::format!(
                "swarm {} has {} positions / {} weights for a {}-UAV scenario",
                i + 1,
                positions[i].len(),
                weights[i].len(),
                n
            )));
        }
        if receivers[i] >= n {
            return Err(Error::ShapeMismatch(alloc::format!(
                "receiver index {} out of range for {} UAVs",
                receivers[i],
                n
            )));
        }
    }

    let build = |i: usize| -> Result<UvaaState> {
        let mut center = Vec3::ZERO;
        for &p in &positions[i] {
            center = center + p;
        }
        center = center * (1.0 / n as f64);
        let receiver = positions[1 - i][receivers[i]];
        let receiver_distance = center.distance(receiver);
        if receiver_distance == 0.0 {
            return Err(Error::ZeroDistance);
        }
        let receiver_direction = Direction::between(center, receiver);

        let config = match phases {
            Some(ph) => ArrayConfig::new(
                &positions[i],
                &weights[i],
                &ph[i],
                scenario.comm.wavelength,
            )?,
            None => ArrayConfig::steered(
                &positions[i],
                &weights[i],
                scenario.comm.wavelength,
                receiver_direction,
            )?,
        };

        let pattern = if config.total_weight() > 0.0 {
            BeamPattern::compute(
                &config,
                receiver_direction,
                grid,
                scenario.comm.efficiency,
                scenario.array.mainlobe_half_angle,
                scenario.array.element_pattern,
            )?
        } else {
            // A switched-off array radiates nothing: zero gain everywhere
            // and a flat (0 dB) sidelobe ratio.
            BeamPattern {
                target: receiver_direction,
                target_af: 0.0,
                cell_af: alloc::vec![0.0; grid.len()],
                power_integral: 0.0,
                gain: 0.0,
                max_sll: 1.0,
            }
        };

        Ok(UvaaState { config, pattern, center, receiver_distance, receiver_direction })
    };

    Ok([build(0)?, build(1)?])
}

/// Steered transmit states for a nominal solution.
pub fn uvaa_states(
    scenario: &Scenario,
    grid: &DirectionGrid,
    solution: &Solution,
) -> Result<[UvaaState; 2]> {
    uvaa_states_with(
        scenario,
        grid,
        &solution.positions,
        &solution.weights,
        solution.receivers,
        None,
    )
}

/// Secrecy rates of both directions given prebuilt transmit states.
pub fn secrecy_from_states(
    scenario: &Scenario,
    states: &[UvaaState; 2],
    set: EavesdropperSet,
) -> Result<SecrecyReport> {
    let comm = &scenario.comm;
    let mut rates = [LinkRates { a2a: 0.0, eavesdropper: 0.0 }; 2];
    for (i, state) in states.iter().enumerate() {
        let r_a2a = a2a_rate(state.receiver_distance, state.pattern.gain, comm);
        let mut snr_sum = 0.0;
        let known = scenario.known_eavesdroppers.iter();
        let unknown = scenario.unknown_eavesdroppers.iter();
        let eaves: Vec<GroundPoint> = match set {
            EavesdropperSet::Known => known.copied().collect(),
            EavesdropperSet::All => known.chain(unknown).copied().collect(),
        };
        for point in eaves {
            let geom = LinkGeometry::to_ground(state.center, point)?;
            let gain = state.gain_toward(geom.direction, comm.efficiency);
            snr_sum += eavesdropper_snr(&geom, gain, comm)?;
        }
        let r_eave = comm.bandwidth * math::log2(1.0 + snr_sum);
        rates[i] = LinkRates { a2a: r_a2a, eavesdropper: r_eave };
    }
    let capacity = rates
        .iter()
        .map(|r| r.a2a - r.eavesdropper)
        .fold(f64::INFINITY, f64::min);
    Ok(SecrecyReport { set, rates, capacity })
}

/// Full secrecy evaluation of a solution: steers each UVAA toward its
/// receiver, computes both air-to-air rates and the MRC-combined
/// eavesdropper rate over the chosen set, and returns
/// `min_i (R_a2a_i - R_eave_i)`.
pub fn secrecy_report(
    scenario: &Scenario,
    solution: &Solution,
    set: EavesdropperSet,
) -> Result<SecrecyReport> {
    let grid = DirectionGrid::from_params(&scenario.array);
    let states = uvaa_states(scenario, &grid, solution)?;
    secrecy_from_states(scenario, &states, set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::random_scenario;

    #[test]
    fn los_probability_degenerate_b1_is_one() {
        for &angle in &[0.0, 10.0, 90.0] {
            assert_eq!(los_probability(angle, 0.0, 0.16), 1.0);
        }
    }

    #[test]
    fn los_probability_reference_values() {
        // Direct evaluations of the formula at the default constants.
        let high = los_probability(90.0, 9.61, 0.16);
        assert!((high - 0.9999751).abs() < 1e-7, "P(90) = {high}");
        let low = los_probability(0.0, 9.61, 0.16);
        assert!((low - 0.0218726).abs() < 1e-7, "P(0) = {low}");
    }

    #[test]
    fn los_probability_increases_with_elevation() {
        let mut prev = los_probability(0.0, 9.61, 0.16);
        for deg in 1..=90 {
            let p = los_probability(deg as f64, 9.61, 0.16);
            assert!(p > prev);
            prev = p;
        }
        assert!(prev < 1.0);
    }

    fn geom(distance: f64, elevation: f64) -> LinkGeometry {
        LinkGeometry { distance, elevation, direction: Direction::new(1.0, 0.0) }
    }

    #[test]
    fn eavesdropper_snr_zero_gain_is_zero() {
        let comm = CommParams::default();
        assert_eq!(eavesdropper_snr(&geom(100.0, 0.3), 0.0, &comm).unwrap(), 0.0);
    }

    #[test]
    fn eavesdropper_snr_attenuation_free_reduces_to_path_loss() {
        let mut comm = CommParams::default();
        comm.mu_los = 1.0;
        comm.mu_nlos = 1.0;
        let snr = eavesdropper_snr(&geom(250.0, 0.5), 3.0, &comm).unwrap();
        let expected = comm.tx_power * comm.path_loss_const * 3.0
            * math::pow(250.0, -comm.path_loss_exp)
            / comm.noise_power;
        assert!((snr - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn eavesdropper_snr_follows_square_law() {
        let comm = CommParams::default();
        let near = eavesdropper_snr(&geom(100.0, 0.3), 2.0, &comm).unwrap();
        let far = eavesdropper_snr(&geom(200.0, 0.3), 2.0, &comm).unwrap();
        assert!((near / far - 4.0).abs() < 1e-9);
    }

    #[test]
    fn eavesdropper_snr_zero_distance_errors() {
        let comm = CommParams::default();
        assert_eq!(
            eavesdropper_snr(&geom(0.0, 0.3), 2.0, &comm),
            Err(Error::ZeroDistance)
        );
    }

    #[test]
    fn mrc_is_a_sum() {
        assert_eq!(mrc_combined_snr([1.0, 2.0, 3.0]), 6.0);
        assert_eq!(mrc_combined_snr([]), 0.0);
        assert_eq!(mrc_combined_snr([0.37]), 0.37);
    }

    #[test]
    fn a2a_rate_log2_check() {
        // Choose gain so that the SNR term is exactly 3 => rate = 2 * B.
        let comm = CommParams::default();
        let d = 1000.0;
        let gain = 3.0 * comm.noise_power / (comm.tx_power * comm.path_loss_const)
            / math::pow(d, -comm.path_loss_exp);
        let rate = a2a_rate(d, gain, &comm);
        assert!((rate - 2.0 * comm.bandwidth).abs() < 1e-3);
        assert_eq!(a2a_rate(d, 0.0, &comm), 0.0);
        assert!(a2a_rate(d, 2.0 * gain, &comm) > rate);
    }

    #[test]
    fn no_eavesdroppers_gives_min_a2a() {
        let mut scenario = random_scenario(11, 4, 0, 0);
        scenario.known_eavesdroppers.clear();
        scenario.unknown_eavesdroppers.clear();
        let solution = Solution::at_rest(&scenario, [1, 2]);
        let report = secrecy_report(&scenario, &solution, EavesdropperSet::Known).unwrap();
        let min_a2a = report.rates[0].a2a.min(report.rates[1].a2a);
        assert_eq!(report.capacity, min_a2a);
        assert_eq!(report.rates[0].eavesdropper, 0.0);
    }

    #[test]
    fn known_equals_all_when_unknown_empty() {
        let mut scenario = random_scenario(13, 4, 2, 0);
        scenario.unknown_eavesdroppers.clear();
        let solution = Solution::at_rest(&scenario, [0, 3]);
        let known = secrecy_report(&scenario, &solution, EavesdropperSet::Known).unwrap();
        let all = secrecy_report(&scenario, &solution, EavesdropperSet::All).unwrap();
        assert_eq!(known.capacity, all.capacity);
        assert_eq!(known.rates, all.rates);
    }

    #[test]
    fn extra_unknown_eavesdroppers_never_raise_capacity() {
        for seed in 0..8 {
            let scenario = random_scenario(seed, 4, 2, 3);
            let solution = Solution::at_rest(&scenario, [seed as usize % 4, 1]);
            let known = secrecy_report(&scenario, &solution, EavesdropperSet::Known).unwrap();
            let all = secrecy_report(&scenario, &solution, EavesdropperSet::All).unwrap();
            assert!(all.capacity <= known.capacity + 1e-9);
        }
    }

    #[test]
    fn switched_off_swarm_yields_zero_rates() {
        let scenario = random_scenario(17, 4, 2, 1);
        let mut solution = Solution::at_rest(&scenario, [0, 0]);
        solution.weights[0] = alloc::vec![0.0; 4];
        let report = secrecy_report(&scenario, &solution, EavesdropperSet::All).unwrap();
        assert_eq!(report.rates[0].a2a, 0.0);
        assert_eq!(report.rates[0].eavesdropper, 0.0);
        assert!(report.rates[1].a2a > 0.0);
    }
}
