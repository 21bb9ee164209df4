//! World description: the two swarm volumes, original UAV positions, ground
//! eavesdroppers and all channel / energy / array-simulation parameters.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::geom::{Box3, GroundPoint, Vec3};
use crate::math;
use crate::objective::Solution;
use crate::rng::{stream_rng, streams};

/// Communication-channel parameters shared by both UVAAs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommParams {
    /// Bandwidth B in Hz.
    pub bandwidth: f64,
    /// Total transmit power of one UVAA, in watts.
    pub tx_power: f64,
    /// Constant path-loss coefficient K0 (dimensionless).
    pub path_loss_const: f64,
    /// Path-loss exponent alpha.
    pub path_loss_exp: f64,
    /// Noise power sigma^2 in watts.
    pub noise_power: f64,
    /// Environment constant b1 of the LoS-probability model.
    pub los_b1: f64,
    /// Environment constant b2 of the LoS-probability model (per degree).
    pub los_b2: f64,
    /// LoS attenuation factor, linear.
    pub mu_los: f64,
    /// NLoS attenuation factor, linear.
    pub mu_nlos: f64,
    /// Carrier wavelength in meters.
    pub wavelength: f64,
    /// Antenna array efficiency eta in [0, 1].
    pub efficiency: f64,
}

impl Default for CommParams {
    fn default() -> Self {
        let wavelength = 0.125; // 2.4 GHz
        CommParams {
            bandwidth: 1e6,
            tx_power: 0.1,
            path_loss_const: free_space_k0(wavelength),
            path_loss_exp: 2.0,
            noise_power: 1e-13,
            los_b1: 9.61,
            los_b2: 0.16,
            mu_los: 2.0,    // ~3 dB
            mu_nlos: 200.0, // ~23 dB
            wavelength,
            efficiency: 0.8,
        }
    }
}

/// Free-space reference loss `(lambda / 4 pi)^2`, the conventional K0.
pub fn free_space_k0(wavelength: f64) -> f64 {
    let r = wavelength / (4.0 * core::f64::consts::PI);
    r * r
}

impl CommParams {
    pub fn validate(&self) -> Result<()> {
        let positives = [
            ("bandwidth", self.bandwidth),
            ("tx_power", self.tx_power),
            ("path_loss_const", self.path_loss_const),
            ("path_loss_exp", self.path_loss_exp),
            ("noise_power", self.noise_power),
            ("los_b1", self.los_b1),
            ("los_b2", self.los_b2),
            ("mu_los", self.mu_los),
            ("mu_nlos", self.mu_nlos),
            ("wavelength", self.wavelength),
            ("efficiency", self.efficiency),
        ];
        for (name, v) in positives {
            if !(v > 0.0) {
                return Err(Error::Validation(format!("comm.{name} must be > 0, got {v}")));
            }
        }
        if self.efficiency > 1.0 {
            return Err(Error::Validation(format!(
                "comm.efficiency must be <= 1, got {}",
                self.efficiency
            )));
        }
        if self.mu_nlos < self.mu_los {
            return Err(Error::Validation(format!(
                "comm.mu_nlos ({}) must be >= comm.mu_los ({})",
                self.mu_nlos, self.mu_los
            )));
        }
        Ok(())
    }
}

/// Rotary-wing propulsion model constants plus the fixed cruise/climb speeds
/// used when reconfiguring the swarm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParams {
    /// Blade profile power in hover, watts.
    pub blade_power: f64,
    /// Induced power in hover, watts.
    pub induced_power: f64,
    /// Rotor blade tip speed, m/s.
    pub tip_speed: f64,
    /// Mean rotor induced velocity in hover, m/s.
    pub hover_induced_speed: f64,
    /// Fuselage drag ratio d0.
    pub fuselage_drag_ratio: f64,
    /// Rotor solidity s.
    pub rotor_solidity: f64,
    /// Air density, kg/m^3.
    pub air_density: f64,
    /// Rotor disc area, m^2.
    pub rotor_disc_area: f64,
    /// UAV mass, kg.
    pub mass: f64,
    /// Gravitational acceleration, m/s^2.
    pub gravity: f64,
    /// Horizontal cruise speed used for repositioning legs, m/s.
    pub cruise_speed: f64,
    /// Vertical speed used for climb/descent legs, m/s.
    pub climb_speed: f64,
}

impl Default for EnergyParams {
    fn default() -> Self {
        EnergyParams {
            blade_power: 79.86,
            induced_power: 88.63,
            tip_speed: 120.0,
            hover_induced_speed: 4.03,
            fuselage_drag_ratio: 0.6,
            rotor_solidity: 0.05,
            air_density: 1.225,
            rotor_disc_area: 0.503,
            mass: 2.0,
            gravity: 9.8,
            cruise_speed: 10.0,
            climb_speed: 5.0,
        }
    }
}

impl EnergyParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("blade_power", self.blade_power),
            ("induced_power", self.induced_power),
            ("tip_speed", self.tip_speed),
            ("hover_induced_speed", self.hover_induced_speed),
            ("fuselage_drag_ratio", self.fuselage_drag_ratio),
            ("rotor_solidity", self.rotor_solidity),
            ("air_density", self.air_density),
            ("rotor_disc_area", self.rotor_disc_area),
            ("mass", self.mass),
            ("gravity", self.gravity),
            ("cruise_speed", self.cruise_speed),
            ("climb_speed", self.climb_speed),
        ];
        for (name, v) in fields {
            if !(v > 0.0) {
                return Err(Error::Validation(format!("energy.{name} must be > 0, got {v}")));
            }
        }
        Ok(())
    }
}

/// Far-field element pattern selector. Only isotropic elements are modeled;
/// the selector exists so scenario files can name the pattern explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ElementPattern {
    #[default]
    Isotropic,
}

impl ElementPattern {
    /// Far-field magnitude w(theta, phi) of a single element.
    pub fn magnitude(&self, _theta: f64, _phi: f64) -> f64 {
        match self {
            ElementPattern::Isotropic => 1.0,
        }
    }
}

/// Direction-grid resolution and sidelobe-scan geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayParams {
    /// Polar-angle grid step, radians.
    pub theta_step: f64,
    /// Azimuth grid step, radians.
    pub phi_step: f64,
    /// Great-circle half-angle around the target excluded from the sidelobe
    /// scan, radians.
    pub mainlobe_half_angle: f64,
    /// Element pattern of each UAV antenna.
    pub element_pattern: ElementPattern,
}

impl Default for ArrayParams {
    fn default() -> Self {
        let five_deg = core::f64::consts::PI / 36.0;
        ArrayParams {
            theta_step: five_deg,
            phi_step: five_deg,
            mainlobe_half_angle: core::f64::consts::PI / 18.0,
            element_pattern: ElementPattern::Isotropic,
        }
    }
}

impl ArrayParams {
    pub fn validate(&self) -> Result<()> {
        let max_step = core::f64::consts::PI / 18.0;
        for (name, v) in [("theta_step", self.theta_step), ("phi_step", self.phi_step)] {
            if !(v > 0.0 && v <= max_step + 1e-12) {
                return Err(Error::Validation(format!(
                    "array.{name} must be in (0, pi/18] rad, got {v}"
                )));
            }
        }
        let ml = self.mainlobe_half_angle;
        if !(ml > 0.0 && ml < core::f64::consts::FRAC_PI_2) {
            return Err(Error::Validation(format!(
                "array.mainlobe_half_angle must be in (0, pi/2) rad, got {ml}"
            )));
        }
        Ok(())
    }
}

/// Immutable world description: everything the objective function needs
/// apart from the decision variables themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Reachable volume of each swarm.
    pub swarm_boxes: [Box3; 2],
    /// Original (pre-reconfiguration) UAV positions per swarm.
    pub original_positions: [Vec<Vec3>; 2],
    /// Detected eavesdroppers the optimizer may exploit.
    pub known_eavesdroppers: Vec<GroundPoint>,
    /// Undetected eavesdroppers, used only for post-hoc evaluation.
    pub unknown_eavesdroppers: Vec<GroundPoint>,
    pub comm: CommParams,
    pub energy: EnergyParams,
    pub array: ArrayParams,
    /// Minimum separation between any two UAVs of the same swarm, meters.
    pub min_separation: f64,
}

impl Scenario {
    /// UAV count per swarm (both swarms hold the same number).
    pub fn n_uav(&self) -> usize {
        self.original_positions[0].len()
    }

    /// Check every scenario invariant, reporting the first violation.
    pub fn validate(&self) -> Result<()> {
        let n = self.original_positions[0].len();
        if n == 0 {
            return Err(Error::Validation("swarm 1 has no UAVs".into()));
        }
        if self.original_positions[1].len() != n {
            return Err(Error::Validation(format!(
                "swarms must have identical UAV counts ({} vs {})",
                n,
                self.original_positions[1].len()
            )));
        }
        for (i, swarm_box) in self.swarm_boxes.iter().enumerate() {
            if !(swarm_box.min.x < swarm_box.max.x
                && swarm_box.min.y < swarm_box.max.y
                && swarm_box.min.z < swarm_box.max.z)
            {
                return Err(Error::Validation(format!("swarm {} box is degenerate", i + 1)));
            }
            if swarm_box.min.z <= 0.0 {
                return Err(Error::Validation(format!(
                    "swarm {} height band must be strictly above ground",
                    i + 1
                )));
            }
        }
        if self.swarm_boxes[0].overlaps(&self.swarm_boxes[1]) {
            return Err(Error::Validation("swarm boxes overlap".into()));
        }
        for (i, positions) in self.original_positions.iter().enumerate() {
            for (j, &p) in positions.iter().enumerate() {
                if !self.swarm_boxes[i].contains(p) {
                    return Err(Error::Validation(format!(
                        "original position {} of swarm {} lies outside its box",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        if !(self.min_separation > 0.0) {
            return Err(Error::Validation(format!(
                "d_min must be > 0, got {}",
                self.min_separation
            )));
        }
        self.comm.validate()?;
        self.energy.validate()?;
        self.array.validate()?;
        Ok(())
    }

    /// All eavesdroppers, known first, then unknown.
    pub fn all_eavesdroppers(&self) -> impl Iterator<Item = GroundPoint> + '_ {
        self.known_eavesdroppers
            .iter()
            .chain(self.unknown_eavesdroppers.iter())
            .copied()
    }
}

/// Geometry used by [`random_scenario`]: the two paper-scale swarm areas
/// (100 m x 100 m, heights 70-120 m, about 5 km apart) and a ground region
/// for eavesdroppers extending `ground_margin` beyond the hull of both
/// areas.
#[derive(Debug, Clone, Copy)]
pub struct ScenarioGeometry {
    pub boxes: [Box3; 2],
    /// Margin of the eavesdropper ground region beyond the hull of the two
    /// swarm areas, meters.
    pub ground_margin: f64,
    pub min_separation: f64,
}

impl Default for ScenarioGeometry {
    fn default() -> Self {
        ScenarioGeometry {
            boxes: [
                Box3::new(Vec3::new(0.0, 0.0, 70.0), Vec3::new(100.0, 100.0, 120.0)),
                Box3::new(Vec3::new(5000.0, 0.0, 70.0), Vec3::new(5100.0, 100.0, 120.0)),
            ],
            ground_margin: 1000.0,
            min_separation: 0.5,
        }
    }
}

/// Generate a scenario with uniformly placed UAVs and eavesdroppers in the
/// default paper-scale geometry. Deterministic for a fixed seed.
pub fn random_scenario(seed: u64, n_uav: usize, n_known: usize, n_unknown: usize) -> Scenario {
    random_scenario_in(&ScenarioGeometry::default(), seed, n_uav, n_known, n_unknown)
}

/// Same as [`random_scenario`] with explicit geometry.
pub fn random_scenario_in(
    geometry: &ScenarioGeometry,
    seed: u64,
    n_uav: usize,
    n_known: usize,
    n_unknown: usize,
) -> Scenario {
    assert!(n_uav >= 1, "each swarm needs at least one UAV");
    let mut rng = stream_rng(seed, streams::SCENARIO, 0, 0);

    let mut original_positions: [Vec<Vec3>; 2] = [Vec::new(), Vec::new()];
    for (i, positions) in original_positions.iter_mut().enumerate() {
        let b = geometry.boxes[i];
        for _ in 0..n_uav {
            positions.push(Vec3::new(
                rng.gen_range(b.min.x..=b.max.x),
                rng.gen_range(b.min.y..=b.max.y),
                rng.gen_range(b.min.z..=b.max.z),
            ));
        }
    }

    let hull_min_x = geometry.boxes[0].min.x.min(geometry.boxes[1].min.x) - geometry.ground_margin;
    let hull_max_x = geometry.boxes[0].max.x.max(geometry.boxes[1].max.x) + geometry.ground_margin;
    let hull_min_y = geometry.boxes[0].min.y.min(geometry.boxes[1].min.y) - geometry.ground_margin;
    let hull_max_y = geometry.boxes[0].max.y.max(geometry.boxes[1].max.y) + geometry.ground_margin;
    let ground = |rng: &mut rand_chacha::ChaCha12Rng| {
        GroundPoint::new(
            rng.gen_range(hull_min_x..=hull_max_x),
            rng.gen_range(hull_min_y..=hull_max_y),
        )
    };
    let known_eavesdroppers = (0..n_known).map(|_| ground(&mut rng)).collect();
    let unknown_eavesdroppers = (0..n_unknown).map(|_| ground(&mut rng)).collect();

    Scenario {
        swarm_boxes: geometry.boxes,
        original_positions,
        known_eavesdroppers,
        unknown_eavesdroppers,
        comm: CommParams::default(),
        energy: EnergyParams::default(),
        array: ArrayParams::default(),
        min_separation: geometry.min_separation,
    }
}

/// Arrange each swarm as a half-wavelength linear antenna array along the
/// x-axis through its box center at mid-height, with all excitation weights
/// at 1 and a seeded uniform receiver draw per swarm.
///
/// Fails if the line does not fit the box; the spacing is never shrunk
/// silently.
pub fn laa_baseline(scenario: &Scenario, seed: u64) -> Result<Solution> {
    let n = scenario.n_uav();
    let spacing = scenario.comm.wavelength / 2.0;
    let span = spacing * (n as f64 - 1.0);

    let mut positions: [Vec<Vec3>; 2] = [Vec::new(), Vec::new()];
    for (i, swarm_box) in scenario.swarm_boxes.iter().enumerate() {
        let available = swarm_box.extent(0);
        if span > available {
            return Err(Error::ArrayTooWide { required: span, available });
        }
        let c = swarm_box.center();
        for j in 0..n {
            let offset = (j as f64 - (n as f64 - 1.0) / 2.0) * spacing;
            positions[i].push(Vec3::new(c.x + offset, c.y, c.z));
        }
    }

    let mut rng = stream_rng(seed, streams::LAA, 0, 0);
    let receivers = [rng.gen_range(0..n), rng.gen_range(0..n)];

    Ok(Solution {
        positions,
        weights: [alloc::vec![1.0; n], alloc::vec![1.0; n]],
        receivers,
    })
}

/// Elevation angle (radians, from the horizontal at the ground point up to
/// `target`), as used by the LoS-probability model.
pub fn elevation_angle(ground: GroundPoint, target: Vec3) -> f64 {
    let horizontal = target.horizontal_distance(ground.position());
    math::atan2(target.z, horizontal)
}
