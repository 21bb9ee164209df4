//! Array factor, steering phases, numerically integrated directivity gain
//! and maximum sidelobe level of a UVAA.
//!
//! The array factor of an N-element array with weights `w_j`, phases
//! `Phi_j` and center-relative positions `p_j` is
//!
//! `AF(theta, phi) = sum_j w_j exp(i [k p_j . u(theta, phi) + Phi_j])`
//!
//! with `k = 2 pi / lambda` and `u` the unit vector of the probe direction.
//! Angles are measured from the array center (the arithmetic mean of the
//! element positions), so a common translation of all elements leaves |AF|
//! unchanged.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{Direction, Vec3};
use crate::math;
use crate::scenario::{ArrayParams, ElementPattern};

/// One UVAA snapshot: element positions (stored relative to the array
/// center), excitation weights in [0, 1] and initial phases in [0, 2*pi).
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayConfig {
    positions: Vec<Vec3>,
    weights: Vec<f64>,
    phases: Vec<f64>,
    wavelength: f64,
}

impl ArrayConfig {
    /// Build a configuration from absolute element positions. Phases are
    /// wrapped into [0, 2*pi); positions are re-expressed relative to their
    /// arithmetic mean.
    pub fn new(
        positions: &[Vec3],
        weights: &[f64],
        phases: &[f64],
        wavelength: f64,
    ) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::Validation("array needs at least one element".into()));
        }
        if positions.len() != weights.len() || positions.len() != phases.len() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{} positions, {} weights, {} phases",
                positions.len(),
                weights.len(),
                phases.len()
            )));
        }
        if !(wavelength > 0.0) {
            return Err(Error::Validation("wavelength must be > 0".into()));
        }
        for &w in weights {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::Validation(alloc::format!(
                    "excitation weight {w} outside [0, 1]"
                )));
            }
        }
        let n = positions.len() as f64;
        let mut center = Vec3::ZERO;
        for &p in positions {
            center = center + p;
        }
        center = center * (1.0 / n);
        Ok(ArrayConfig {
            positions: positions.iter().map(|&p| p - center).collect(),
            weights: weights.to_vec(),
            phases: phases.iter().map(|&p| math::wrap_angle(p)).collect(),
            wavelength,
        })
    }

    /// Build a configuration with zero phases, then steer it at `target`.
    pub fn steered(
        positions: &[Vec3],
        weights: &[f64],
        wavelength: f64,
        target: Direction,
    ) -> Result<Self> {
        let zeros = alloc::vec![0.0; positions.len()];
        let mut config = ArrayConfig::new(positions, weights, &zeros, wavelength)?;
        config.phases = steering_phases(&config, target);
        Ok(config)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Center-relative element positions.
    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// Replace the initial phases (wrapped into [0, 2*pi)).
    pub fn set_phases(&mut self, phases: &[f64]) -> Result<()> {
        if phases.len() != self.positions.len() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{} phases for {} elements",
                phases.len(),
                self.positions.len()
            )));
        }
        self.phases = phases.iter().map(|&p| math::wrap_angle(p)).collect();
        Ok(())
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn wave_number(&self) -> f64 {
        math::TAU / self.wavelength
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Conjugate steering phases: `Phi_j = -k p_j . u(target)` wrapped into
/// [0, 2*pi). With these phases every element contributes in phase at the
/// target, so |AF(target)| equals the sum of the weights.
pub fn steering_phases(config: &ArrayConfig, target: Direction) -> Vec<f64> {
    let k = config.wave_number();
    let u = target.unit();
    config
        .positions
        .iter()
        .map(|&p| math::wrap_angle(-k * p.dot(u)))
        .collect()
}

/// |AF| toward one direction.
pub fn array_factor(config: &ArrayConfig, dir: Direction) -> f64 {
    array_factor_unit(config, dir.unit())
}

fn array_factor_unit(config: &ArrayConfig, u: Vec3) -> f64 {
    let k = config.wave_number();
    let mut re = 0.0;
    let mut im = 0.0;
    for ((&p, &w), &phi) in config
        .positions
        .iter()
        .zip(&config.weights)
        .zip(&config.phases)
    {
        let (s, c) = math::sincos(k * p.dot(u) + phi);
        re += w * c;
        im += w * s;
    }
    math::sqrt(re * re + im * im)
}

/// One cell of the discretized sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridCell {
    pub dir: Direction,
    pub unit: Vec3,
    /// Midpoint-rule solid angle `sin(theta) * dtheta * dphi`.
    pub weight: f64,
}

/// Midpoint discretization of the full sphere: theta covers [0, pi] and phi
/// covers [-pi, pi], with samples at cell centers.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionGrid {
    cells: Vec<GridCell>,
    theta_step: f64,
    phi_step: f64,
}

impl DirectionGrid {
    /// Build a grid with steps as close to the requested ones as divides the
    /// sphere evenly.
    pub fn new(theta_step: f64, phi_step: f64) -> Self {
        let pi = core::f64::consts::PI;
        let n_theta = (math::round(pi / theta_step) as usize).max(1);
        let n_phi = (math::round(math::TAU / phi_step) as usize).max(1);
        let dt = pi / n_theta as f64;
        let dp = math::TAU / n_phi as f64;
        let mut cells = Vec::with_capacity(n_theta * n_phi);
        for it in 0..n_theta {
            let theta = (it as f64 + 0.5) * dt;
            let weight = math::sin(theta) * dt * dp;
            for ip in 0..n_phi {
                let phi = -pi + (ip as f64 + 0.5) * dp;
                let dir = Direction::new(theta, phi);
                cells.push(GridCell { dir, unit: dir.unit(), weight });
            }
        }
        DirectionGrid { cells, theta_step: dt, phi_step: dp }
    }

    pub fn from_params(params: &ArrayParams) -> Self {
        DirectionGrid::new(params.theta_step, params.phi_step)
    }

    pub fn cells(&self) -> &[GridCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn theta_step(&self) -> f64 {
        self.theta_step
    }

    pub fn phi_step(&self) -> f64 {
        self.phi_step
    }

    /// Sum of the per-cell solid angles; 4*pi up to quadrature error.
    pub fn solid_angle_sum(&self) -> f64 {
        self.cells.iter().map(|c| c.weight).sum()
    }

    pub fn min_cell_weight(&self) -> f64 {
        self.cells.iter().map(|c| c.weight).fold(f64::INFINITY, f64::min)
    }
}

/// The sampled beam pattern of one configuration: per-cell |AF| together
/// with the quantities every consumer needs (the power integral that
/// normalizes gains, the target |AF|, the directivity gain toward the
/// target and the maximum sidelobe ratio outside the mainlobe exclusion).
#[derive(Debug, Clone, PartialEq)]
pub struct BeamPattern {
    pub target: Direction,
    /// |AF| at the target direction.
    pub target_af: f64,
    /// |AF| per grid cell, in grid order.
    pub cell_af: Vec<f64>,
    /// `sum_cells |AF|^2 w^2 * cell_weight`, the discretized denominator of
    /// the gain integral.
    pub power_integral: f64,
    /// Linear directivity gain toward the target, including efficiency.
    pub gain: f64,
    /// Max |AF| outside the mainlobe exclusion divided by |AF(target)|.
    pub max_sll: f64,
}

impl BeamPattern {
    /// Sample the pattern of `config` over `grid`.
    ///
    /// `eta` is the array efficiency and `mainlobe_half_angle` the
    /// great-circle exclusion radius of the sidelobe scan. Fails when all
    /// weights are zero (the gain normalization vanishes) or when the
    /// exclusion swallows every grid cell.
    pub fn compute(
        config: &ArrayConfig,
        target: Direction,
        grid: &DirectionGrid,
        eta: f64,
        mainlobe_half_angle: f64,
        element: ElementPattern,
    ) -> Result<Self> {
        if config.total_weight() <= 0.0 {
            return Err(Error::ZeroPowerArray);
        }
        let cell_af: Vec<f64> = grid
            .cells()
            .iter()
            .map(|cell| array_factor_unit(config, cell.unit))
            .collect();
        let mut power_integral = 0.0;
        for (cell, &af) in grid.cells().iter().zip(&cell_af) {
            let w = element.magnitude(cell.dir.theta, cell.dir.phi);
            power_integral += af * af * w * w * cell.weight;
        }

        let w_target = element.magnitude(target.theta, target.phi);
        let target_af = array_factor(config, target);
        let gain =
            4.0 * core::f64::consts::PI * target_af * target_af * w_target * w_target * eta
                / power_integral;

        let mut max_side = f64::NEG_INFINITY;
        for (cell, &af) in grid.cells().iter().zip(&cell_af) {
            if cell.dir.angle_to(target) >= mainlobe_half_angle {
                max_side = max_side.max(af);
            }
        }
        if max_side == f64::NEG_INFINITY {
            return Err(Error::EmptyScanRegion);
        }
        // A steered pattern has its global maximum at the target; an exact
        // null there would only arise from hand-built phases. Clamp so the
        // ratio stays finite for downstream statistics.
        let max_sll = if target_af > 0.0 { (max_side / target_af).min(1e12) } else { 1e12 };

        Ok(BeamPattern { target, target_af, cell_af, power_integral, gain, max_sll })
    }

    /// Directivity gain toward an arbitrary direction, reusing this
    /// pattern's normalization integral.
    pub fn gain_toward(&self, config: &ArrayConfig, dir: Direction, eta: f64) -> f64 {
        let af = array_factor(config, dir);
        4.0 * core::f64::consts::PI * af * af * eta / self.power_integral
    }
}

/// Numerically integrated directivity gain toward `target` (Isotropic
/// elements). Errors on an all-zero weight vector.
pub fn directivity_gain(
    config: &ArrayConfig,
    target: Direction,
    grid: &DirectionGrid,
    eta: f64,
) -> Result<f64> {
    let pattern = BeamPattern::compute(
        config,
        target,
        grid,
        eta,
        core::f64::consts::PI / 18.0,
        ElementPattern::Isotropic,
    )?;
    Ok(pattern.gain)
}

/// Maximum sidelobe amplitude ratio: the largest grid-cell |AF| at
/// great-circle distance >= `mainlobe_half_angle` from the target, divided
/// by |AF(target)|. Report in dB as `20 log10(ratio)`.
pub fn max_sll(
    config: &ArrayConfig,
    target: Direction,
    grid: &DirectionGrid,
    mainlobe_half_angle: f64,
) -> Result<f64> {
    let target_af = array_factor(config, target);
    if !(target_af > 0.0) {
        return Err(Error::ZeroPowerArray);
    }
    let mut max_side = f64::NEG_INFINITY;
    for cell in grid.cells() {
        if cell.dir.angle_to(target) >= mainlobe_half_angle {
            max_side = max_side.max(array_factor_unit(config, cell.unit));
        }
    }
    if max_side == f64::NEG_INFINITY {
        return Err(Error::EmptyScanRegion);
    }
    Ok(max_side / target_af)
}

/// Amplitude ratio to decibels, `20 log10(ratio)`.
pub fn ratio_to_db(ratio: f64) -> f64 {
    20.0 * math::log10(ratio)
}
