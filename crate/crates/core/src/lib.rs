//! Simulation and multi-objective optimization of secure two-way aerial
//! communication between two UAV swarms acting as virtual antenna arrays
//! (UVAAs).
//!
//! The crate models the physical layer (array factor, directivity gain,
//! sidelobe levels, air-to-air rates, colluding-eavesdropper SNR under
//! maximum ratio combining, rotary-wing propulsion energy) and searches the
//! joint position / excitation-weight / receiver-selection space with a
//! multi-objective ant-lion optimizer, either in its vanilla form
//! ([`run_moalo`]) or with random-walk initialization, sorting-based
//! population evolution and an integer update rule ([`run_moalo_rsi`]).
//!
//! The crate is `no_std` (with `alloc`); all file formats, CLI plumbing and
//! parallel evaluation live in the companion `uvaa-cli` crate.

#![no_std]

extern crate alloc;

pub mod archive;
pub mod beamforming;
pub mod channel;
pub mod energy;
mod error;
pub mod geom;
mod math;
pub mod moalo;
pub mod objective;
pub mod rng;
pub mod robustness;
pub mod rsi;
pub mod scenario;

pub use archive::{Archive, ArchiveEntry};
pub use error::{Error, Result};
pub use geom::{Box3, Direction, GroundPoint, Vec3};
pub use moalo::{
    run_moalo, run_moalo_observed, AlgoParams, BatchEvaluator, IterationRecord, RunOutcome,
    RunTrace, SerialEvaluator,
};
pub use objective::{dominates, repair, Objective, ObjectiveVector, Solution};
pub use rsi::{run_moalo_rsi, run_moalo_rsi_observed, select_final, ThresholdSnapshot};
pub use scenario::{laa_baseline, random_scenario, ArrayParams, CommParams, EnergyParams, Scenario};
