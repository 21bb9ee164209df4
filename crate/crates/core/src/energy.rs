//! Rotary-wing propulsion power and the reconfiguration energy of moving
//! every UAV from its original position to its beamforming slot.
//!
//! Moves are flown horizontally first, then vertically, at the constant
//! speeds from [`EnergyParams`]; legs start and end at rest, so the kinetic
//! term of the 3D energy model vanishes and only the propulsion integral
//! and the potential term remain.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::Vec3;
use crate::math;
use crate::scenario::EnergyParams;

/// One horizontal-then-vertical repositioning move.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlightLeg {
    pub start: Vec3,
    pub end: Vec3,
    /// Ground-plane distance, meters.
    pub horizontal: f64,
    /// Signed vertical displacement, meters (positive = climb).
    pub vertical: f64,
}

impl FlightLeg {
    pub fn between(start: Vec3, end: Vec3) -> Self {
        FlightLeg {
            start,
            end,
            horizontal: start.horizontal_distance(end),
            vertical: end.z - start.z,
        }
    }
}

/// Level-flight propulsion power at speed `v`:
///
/// `P(v) = P_B (1 + 3 v^2 / v_tip^2)
///       + P_I (sqrt(1 + v^4 / (4 v0^4)) - v^2 / (2 v0^2))^(1/2)
///       + d0 rho s A v^3 / 2`
///
/// At `v = 0` this reduces exactly to `P_B + P_I`.
pub fn propulsion_power(v: f64, params: &EnergyParams) -> f64 {
    let v2 = v * v;
    let tip2 = params.tip_speed * params.tip_speed;
    let v0_2 = params.hover_induced_speed * params.hover_induced_speed;
    let blade = params.blade_power * (1.0 + 3.0 * v2 / tip2);
    let induced_arg = math::sqrt(1.0 + v2 * v2 / (4.0 * v0_2 * v0_2)) - v2 / (2.0 * v0_2);
    let induced = params.induced_power * math::sqrt(induced_arg);
    let parasite = 0.5
        * params.fuselage_drag_ratio
        * params.air_density
        * params.rotor_solidity
        * params.rotor_disc_area
        * v2
        * v;
    blade + induced + parasite
}

/// Energy of one horizontal-then-vertical leg:
/// `P(v_h) d_h / v_h + P(0) |dz| / v_v + m g dz`, floored at zero since a
/// rotor cannot recover potential energy on descent.
pub fn flight_energy(leg: &FlightLeg, params: &EnergyParams) -> f64 {
    let cruise = propulsion_power(params.cruise_speed, params) * leg.horizontal
        / params.cruise_speed;
    let hover = propulsion_power(0.0, params) * math::fabs(leg.vertical) / params.climb_speed;
    let potential = params.mass * params.gravity * leg.vertical;
    (cruise + hover + potential).max(0.0)
}

/// Total energy for moving every UAV from `original[i][j]` to
/// `target[i][j]` (UAV identity is positional). Errors when the shapes
/// differ.
pub fn reconfiguration_energy(
    original: &[Vec<Vec3>; 2],
    target: &[Vec<Vec3>; 2],
    params: &EnergyParams,
) -> Result<f64> {
    let mut total = 0.0;
    for i in 0..2 {
        if original[i].len() != target[i].len() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "swarm {}: {} original vs {} target positions",
                i + 1,
                original[i].len(),
                target[i].len()
            )));
        }
        for (&from, &to) in original[i].iter().zip(&target[i]) {
            total += flight_energy(&FlightLeg::between(from, to), params);
        }
    }
    Ok(total)
}
