use alloc::string::String;
use core::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scenario or parameter invariant does not hold; the message names
    /// the first violated invariant.
    Validation(String),
    /// All excitation weights are zero, so the gain normalization integral
    /// vanishes.
    ZeroPowerArray,
    /// The mainlobe exclusion region covers every grid cell, leaving no
    /// directions to scan for sidelobes.
    EmptyScanRegion,
    /// An operation that selects from the Pareto archive was called on an
    /// empty archive.
    EmptyArchive,
    /// A link of zero length has no defined direction or path loss.
    ZeroDistance,
    /// Two containers that must have matching shapes do not.
    ShapeMismatch(String),
    /// A linear array of the requested element count does not fit in the
    /// swarm box at the requested spacing.
    ArrayTooWide { required: f64, available: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::ZeroPowerArray => write!(f, "zero-power array: all excitation weights are 0"),
            Error::EmptyScanRegion => {
                write!(f, "mainlobe exclusion region swallows the whole direction grid")
            }
            Error::EmptyArchive => write!(f, "archive is empty"),
            Error::ZeroDistance => write!(f, "link distance is zero"),
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::ArrayTooWide { required, available } => write!(
                f,
                "linear array needs {required} m but the swarm box is only {available} m wide"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
