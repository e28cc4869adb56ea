use thiserror::Error;

/// Errors raised by the engines. Budget errors are kept distinct so callers
/// can map them onto their own exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("element {element} does not belong to group {group}")]
    ForeignElement { element: String, group: String },

    #[error("subgroup {subgroup} is not supported in group {group}")]
    UnsupportedSubgroup { subgroup: String, group: String },

    #[error("operation requires finite index, but [G:H] is infinite")]
    InfiniteIndex,

    #[error("operation requires infinite index, but [G:H] = {0}")]
    FiniteIndex(String),

    #[error("shift {0} of the section does not lie in the subgroup")]
    BadSectionShift(String),

    #[error("search budget exhausted: {0}")]
    Budget(String),

    #[error("region {region} is not understood by system {system}")]
    UnknownRegion { region: String, system: String },

    #[error("witness does not belong to system {0}")]
    UnknownWitness(String),

    #[error("base system acts by {found}, but the subgroup needs {expected}")]
    GroupMismatch { expected: String, found: String },

    #[error("invalid system parameters: {0}")]
    InvalidSystem(String),

    #[error("operation not supported by {system}: {what}")]
    Unsupported { system: String, what: String },

    #[error("cover does not cover the space: {0}")]
    NotACover(String),

    #[error("index {index} is out of range for orbit slice (|j| must be at most {bound})")]
    SliceRange { index: String, bound: String },

    #[error("coordinate {0} is not constrained by the certificate regions")]
    Unconstrained(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
