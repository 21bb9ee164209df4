//! On-disk formats: the scenario schema, solution files, archive dumps,
//! evaluation reports and the CSV logs.
//!
//! All lengths are meters, powers watts, rates bps; angles are radians
//! unless the field name ends in `_deg`. Floats are written with Rust's
//! shortest round-trip formatting, so rereading a file reproduces the exact
//! binary values.

use std::io::Write;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use uvaa_core::beamforming::{ratio_to_db, DirectionGrid};
use uvaa_core::channel::SecrecyReport;
use uvaa_core::geom::{Box3, GroundPoint, Vec3};
use uvaa_core::moalo::RunTrace;
use uvaa_core::robustness::RobustnessStats;
use uvaa_core::rsi::ThresholdSnapshot;
use uvaa_core::scenario::{free_space_k0, ElementPattern};
use uvaa_core::{
    ArchiveEntry, ArrayParams, CommParams, EnergyParams, ObjectiveVector, Scenario, Solution,
};

// ---------------------------------------------------------------------------
// Scenario file
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub swarms: Vec<SwarmFile>,
    #[serde(default)]
    pub eavesdroppers: EavesdroppersFile,
    #[serde(default)]
    pub comm: CommFile,
    #[serde(default)]
    pub energy: EnergyFile,
    #[serde(default)]
    pub array: ArrayFile,
    pub d_min: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SwarmFile {
    #[serde(rename = "box")]
    pub volume: BoxFile,
    pub original_positions: Vec<[f64; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoxFile {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub z: [f64; 2],
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct EavesdroppersFile {
    #[serde(default)]
    pub known: Vec<[f64; 2]>,
    #[serde(default)]
    pub unknown: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct CommFile {
    pub bandwidth: f64,
    pub tx_power: f64,
    /// Defaults to `(wavelength / 4 pi)^2` when omitted.
    pub path_loss_const: Option<f64>,
    pub path_loss_exp: f64,
    pub noise_power: f64,
    pub los_b1: f64,
    pub los_b2: f64,
    pub mu_los: f64,
    pub mu_nlos: f64,
    pub wavelength: f64,
    pub efficiency: f64,
}

impl Default for CommFile {
    fn default() -> Self {
        let c = CommParams::default();
        CommFile {
            bandwidth: c.bandwidth,
            tx_power: c.tx_power,
            path_loss_const: None,
            path_loss_exp: c.path_loss_exp,
            noise_power: c.noise_power,
            los_b1: c.los_b1,
            los_b2: c.los_b2,
            mu_los: c.mu_los,
            mu_nlos: c.mu_nlos,
            wavelength: c.wavelength,
            efficiency: c.efficiency,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct EnergyFile {
    pub blade_power: f64,
    pub induced_power: f64,
    pub tip_speed: f64,
    pub hover_induced_speed: f64,
    pub fuselage_drag_ratio: f64,
    pub rotor_solidity: f64,
    pub air_density: f64,
    pub rotor_disc_area: f64,
    pub mass: f64,
    pub gravity: f64,
    pub cruise_speed: f64,
    pub climb_speed: f64,
}

impl Default for EnergyFile {
    fn default() -> Self {
        let e = EnergyParams::default();
        EnergyFile {
            blade_power: e.blade_power,
            induced_power: e.induced_power,
            tip_speed: e.tip_speed,
            hover_induced_speed: e.hover_induced_speed,
            fuselage_drag_ratio: e.fuselage_drag_ratio,
            rotor_solidity: e.rotor_solidity,
            air_density: e.air_density,
            rotor_disc_area: e.rotor_disc_area,
            mass: e.mass,
            gravity: e.gravity,
            cruise_speed: e.cruise_speed,
            climb_speed: e.climb_speed,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ArrayFile {
    pub theta_step_deg: f64,
    pub phi_step_deg: f64,
    pub mainlobe_deg: f64,
    pub element_pattern: String,
}

impl Default for ArrayFile {
    fn default() -> Self {
        ArrayFile {
            theta_step_deg: 5.0,
            phi_step_deg: 5.0,
            mainlobe_deg: 10.0,
            element_pattern: "isotropic".into(),
        }
    }
}

impl ScenarioFile {
    pub fn into_scenario(self) -> anyhow::Result<Scenario> {
        if self.swarms.len() != 2 {
            bail!("scenario must describe exactly 2 swarms, found {}", self.swarms.len());
        }
        let boxes: Vec<Box3> = self
            .swarms
            .iter()
            .map(|s| {
                Box3::new(
                    Vec3::new(s.volume.x[0], s.volume.y[0], s.volume.z[0]),
                    Vec3::new(s.volume.x[1], s.volume.y[1], s.volume.z[1]),
                )
            })
            .collect();
        let positions: Vec<Vec<Vec3>> = self
            .swarms
            .iter()
            .map(|s| {
                s.original_positions
                    .iter()
                    .map(|p| Vec3::new(p[0], p[1], p[2]))
                    .collect()
            })
            .collect();
        let element_pattern = match self.array.element_pattern.as_str() {
            "isotropic" => ElementPattern::Isotropic,
            other => bail!("unknown element pattern {other:?} (supported: \"isotropic\")"),
        };
        let comm = CommParams {
            bandwidth: self.comm.bandwidth,
            tx_power: self.comm.tx_power,
            path_loss_const: self
                .comm
                .path_loss_const
                .unwrap_or_else(|| free_space_k0(self.comm.wavelength)),
            path_loss_exp: self.comm.path_loss_exp,
            noise_power: self.comm.noise_power,
            los_b1: self.comm.los_b1,
            los_b2: self.comm.los_b2,
            mu_los: self.comm.mu_los,
            mu_nlos: self.comm.mu_nlos,
            wavelength: self.comm.wavelength,
            efficiency: self.comm.efficiency,
        };
        let energy = EnergyParams {
            blade_power: self.energy.blade_power,
            induced_power: self.energy.induced_power,
            tip_speed: self.energy.tip_speed,
            hover_induced_speed: self.energy.hover_induced_speed,
            fuselage_drag_ratio: self.energy.fuselage_drag_ratio,
            rotor_solidity: self.energy.rotor_solidity,
            air_density: self.energy.air_density,
            rotor_disc_area: self.energy.rotor_disc_area,
            mass: self.energy.mass,
            gravity: self.energy.gravity,
            cruise_speed: self.energy.cruise_speed,
            climb_speed: self.energy.climb_speed,
        };
        let array = ArrayParams {
            theta_step: self.array.theta_step_deg.to_radians(),
            phi_step: self.array.phi_step_deg.to_radians(),
            mainlobe_half_angle: self.array.mainlobe_deg.to_radians(),
            element_pattern,
        };
        let scenario = Scenario {
            swarm_boxes: [boxes[0], boxes[1]],
            original_positions: [positions[0].clone(), positions[1].clone()],
            known_eavesdroppers: self
                .eavesdroppers
                .known
                .iter()
                .map(|e| GroundPoint::new(e[0], e[1]))
                .collect(),
            unknown_eavesdroppers: self
                .eavesdroppers
                .unknown
                .iter()
                .map(|e| GroundPoint::new(e[0], e[1]))
                .collect(),
            comm,
            energy,
            array,
            min_separation: self.d_min,
        };
        scenario.validate().map_err(|e| anyhow::anyhow!("{e}"))?;
        Ok(scenario)
    }

    pub fn from_scenario(scenario: &Scenario) -> ScenarioFile {
        let swarms = scenario
            .swarm_boxes
            .iter()
            .zip(&scenario.original_positions)
            .map(|(b, positions)| SwarmFile {
                volume: BoxFile {
                    x: [b.min.x, b.max.x],
                    y: [b.min.y, b.max.y],
                    z: [b.min.z, b.max.z],
                },
                original_positions: positions.iter().map(|p| [p.x, p.y, p.z]).collect(),
            })
            .collect();
        ScenarioFile {
            swarms,
            eavesdroppers: EavesdroppersFile {
                known: scenario.known_eavesdroppers.iter().map(|e| [e.x, e.y]).collect(),
                unknown: scenario.unknown_eavesdroppers.iter().map(|e| [e.x, e.y]).collect(),
            },
            comm: CommFile {
                bandwidth: scenario.comm.bandwidth,
                tx_power: scenario.comm.tx_power,
                path_loss_const: Some(scenario.comm.path_loss_const),
                path_loss_exp: scenario.comm.path_loss_exp,
                noise_power: scenario.comm.noise_power,
                los_b1: scenario.comm.los_b1,
                los_b2: scenario.comm.los_b2,
                mu_los: scenario.comm.mu_los,
                mu_nlos: scenario.comm.mu_nlos,
                wavelength: scenario.comm.wavelength,
                efficiency: scenario.comm.efficiency,
            },
            energy: EnergyFile {
                blade_power: scenario.energy.blade_power,
                induced_power: scenario.energy.induced_power,
                tip_speed: scenario.energy.tip_speed,
                hover_induced_speed: scenario.energy.hover_induced_speed,
                fuselage_drag_ratio: scenario.energy.fuselage_drag_ratio,
                rotor_solidity: scenario.energy.rotor_solidity,
                air_density: scenario.energy.air_density,
                rotor_disc_area: scenario.energy.rotor_disc_area,
                mass: scenario.energy.mass,
                gravity: scenario.energy.gravity,
                cruise_speed: scenario.energy.cruise_speed,
                climb_speed: scenario.energy.climb_speed,
            },
            array: ArrayFile {
                theta_step_deg: scenario.array.theta_step.to_degrees(),
                phi_step_deg: scenario.array.phi_step.to_degrees(),
                mainlobe_deg: scenario.array.mainlobe_half_angle.to_degrees(),
                element_pattern: "isotropic".into(),
            },
            d_min: scenario.min_separation,
        }
    }
}

/// Load and validate a scenario file.
pub fn load_scenario(path: &std::path::Path) -> anyhow::Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read scenario file {}", path.display()))?;
    let file: ScenarioFile = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse scenario file {}", path.display()))?;
    file.into_scenario()
        .with_context(|| format!("invalid scenario in {}", path.display()))
}

// ---------------------------------------------------------------------------
// Solutions, objectives, archives
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionFile {
    /// Per-swarm UAV positions, meters.
    pub positions: Vec<Vec<[f64; 3]>>,
    /// Per-swarm excitation weights in [0, 1].
    pub weights: Vec<Vec<f64>>,
    /// 0-based receiver indices into the opposite swarm.
    pub receivers: [usize; 2],
}

impl SolutionFile {
    pub fn from_solution(solution: &Solution) -> SolutionFile {
        SolutionFile {
            positions: solution
                .positions
                .iter()
                .map(|swarm| swarm.iter().map(|p| [p.x, p.y, p.z]).collect())
                .collect(),
            weights: solution.weights.to_vec(),
            receivers: solution.receivers,
        }
    }

    pub fn into_solution(self) -> anyhow::Result<Solution> {
        if self.positions.len() != 2 || self.weights.len() != 2 {
            bail!("solution must have exactly 2 swarms");
        }
        Ok(Solution {
            positions: [
                self.positions[0].iter().map(|p| Vec3::new(p[0], p[1], p[2])).collect(),
                self.positions[1].iter().map(|p| Vec3::new(p[0], p[1], p[2])).collect(),
            ],
            weights: [self.weights[0].clone(), self.weights[1].clone()],
            receivers: self.receivers,
        })
    }
}

pub fn load_solution(path: &std::path::Path) -> anyhow::Result<Solution> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read solution file {}", path.display()))?;
    let file: SolutionFile = serde_json::from_str(&text)
        .with_context(|| format!("cannot parse solution file {}", path.display()))?;
    file.into_solution()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObjectivesOut {
    /// Known secrecy capacity, bps (maximized form).
    pub f1_bps: f64,
    /// Minimized objective 1: `-f1`.
    pub g1: f64,
    /// Worst per-UVAA maximum sidelobe level, dB.
    pub g2_db: f64,
    /// Reconfiguration energy, joules.
    pub g3_joules: f64,
    pub feasible: bool,
    pub violation_m: f64,
}

impl ObjectivesOut {
    pub fn from_vector(v: &ObjectiveVector) -> ObjectivesOut {
        ObjectivesOut {
            f1_bps: v.secrecy_capacity(),
            g1: v.neg_secrecy,
            g2_db: v.max_sll_db,
            g3_joules: v.energy,
            feasible: v.feasible,
            violation_m: v.violation,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SecrecyOut {
    pub set: String,
    pub r_a2a_bps: [f64; 2],
    pub r_eavesdropper_bps: [f64; 2],
    pub capacity_bps: f64,
}

impl SecrecyOut {
    pub fn from_report(report: &SecrecyReport) -> SecrecyOut {
        SecrecyOut {
            set: match report.set {
                uvaa_core::channel::EavesdropperSet::Known => "known".into(),
                uvaa_core::channel::EavesdropperSet::All => "all".into(),
            },
            r_a2a_bps: [report.rates[0].a2a, report.rates[1].a2a],
            r_eavesdropper_bps: [report.rates[0].eavesdropper, report.rates[1].eavesdropper],
            capacity_bps: report.capacity,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvaluationOut {
    pub objectives: ObjectivesOut,
    pub secrecy_known: SecrecyOut,
    pub secrecy_all: SecrecyOut,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArchiveEntryOut {
    pub solution: SolutionFile,
    pub objectives: ObjectivesOut,
}

impl ArchiveEntryOut {
    pub fn from_entry(entry: &ArchiveEntry) -> ArchiveEntryOut {
        ArchiveEntryOut {
            solution: SolutionFile::from_solution(&entry.solution),
            objectives: ObjectivesOut::from_vector(&entry.objectives),
        }
    }
}

// ---------------------------------------------------------------------------
// CSV logs
// ---------------------------------------------------------------------------

/// `iteration,best_f1_bps,best_f2_db,best_f3_j,archive_size`
pub fn convergence_csv(trace: &RunTrace) -> String {
    let mut out = String::from("iteration,best_f1_bps,best_f2_db,best_f3_j,archive_size\n");
    for r in &trace.iterations {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.iteration, r.best_secrecy, r.best_sll_db, r.best_energy, r.archive_size
        ));
    }
    out
}

/// `iteration,active_objective,snapshot,zeta,removed`
pub fn thresholds_csv(snapshots: &[ThresholdSnapshot]) -> String {
    let mut out = String::from("iteration,active_objective,snapshot,zeta,removed\n");
    for s in snapshots {
        let snapshot_value = match s.active {
            0 => s.f1_min,
            1 => s.f2_min,
            _ => s.f3_max,
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.iteration,
            s.active + 1,
            snapshot_value,
            s.zeta[s.active],
            s.removed
        ));
    }
    out
}

/// `theta_rad,phi_rad,af,af_norm_db`: one row per grid cell. The dB column
/// is the power-normalized pattern `20 log10(|AF| / max |AF|)`, floored at
/// -300 dB for exact nulls.
pub fn pattern_csv(grid: &DirectionGrid, cell_af: &[f64]) -> String {
    let max_af = cell_af.iter().cloned().fold(0.0f64, f64::max);
    let mut out = String::from("theta_rad,phi_rad,af,af_norm_db\n");
    for (cell, &af) in grid.cells().iter().zip(cell_af) {
        let db = if af > 0.0 && max_af > 0.0 {
            ratio_to_db(af / max_af).max(-300.0)
        } else {
            -300.0
        };
        out.push_str(&format!("{},{},{},{}\n", cell.dir.theta, cell.dir.phi, af, db));
    }
    out
}

/// `trial,f1_bps,f2_db`
pub fn robustness_csv(stats: &RobustnessStats) -> String {
    let mut out = String::from("trial,f1_bps,f2_db\n");
    for (trial, (f1, f2)) in stats.f1_samples.iter().zip(&stats.f2_samples).enumerate() {
        out.push_str(&format!("{trial},{f1},{f2}\n"));
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryStatsOut {
    pub mean: f64,
    pub std_dev: f64,
    pub p5: f64,
    pub p95: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RobustnessSummaryOut {
    pub kind: String,
    pub trials: usize,
    pub seed: u64,
    pub f1_bps: SummaryStatsOut,
    pub f2_db: SummaryStatsOut,
}

impl RobustnessSummaryOut {
    pub fn from_stats(kind: String, trials: usize, seed: u64, stats: &RobustnessStats) -> Self {
        let conv = |s: &uvaa_core::robustness::SummaryStats| SummaryStatsOut {
            mean: s.mean,
            std_dev: s.std_dev,
            p5: s.p5,
            p95: s.p95,
        };
        RobustnessSummaryOut {
            kind,
            trials,
            seed,
            f1_bps: conv(&stats.f1),
            f2_db: conv(&stats.f2),
        }
    }
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

/// Serialize as pretty JSON with a trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_file(path: &std::path::Path, contents: &str) -> anyhow::Result<()> {
    let mut f = std::fs::File::create(path)
        .with_context(|| format!("cannot create {}", path.display()))?;
    f.write_all(contents.as_bytes())
        .with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}
