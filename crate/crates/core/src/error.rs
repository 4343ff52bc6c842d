use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Reasons a node sequence is not a usable cell path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("expected {expected} nodes, found {found}")]
    WrongLength { expected: u64, found: usize },
    #[error("node {index} does not have the path's rank")]
    WrongWidth { index: usize },
    #[error("node {index} has a coordinate outside [0, side)")]
    OutOfRange { index: usize },
    #[error("node {index} repeats an earlier node")]
    Repeated { index: usize },
    #[error("step from node {index} to node {} is not a unit axis step", index + 1)]
    NonUnitStep { index: usize },
    #[error("path does not start at the origin")]
    EntryNotOrigin,
    #[error("exit node is neither the opposite corner nor a corner adjacent to the origin")]
    UnclassifiableExit,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("{nodes} nodes exceeds the node budget of {budget}")]
    Budget { nodes: BigUint, budget: u64 },
    #[error("invalid cell path: {0}")]
    Validation(#[from] ValidationError),
    #[error("orientation rules fail at node {t}: {reason}")]
    Orientation { t: usize, reason: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("out of range: {0}")]
    Range(String),
    #[error("outside the unit domain: {0}")]
    Domain(String),
    #[error("centered maps require a diagonal-corner cell")]
    UnsupportedClass,
    #[error("curve is discontinuous between u = {u} and u + 1")]
    Discontinuous { u: u64 },
    #[error("cannot fit slope: {0}")]
    Fit(String),
}
