//! Crate-wide error type.

use std::fmt;

/// Errors produced by graph construction, family operations, and the solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Construction of a graph with zero vertices was requested.
    EmptyGraph,
    /// A parameter is outside its documented domain.
    InvalidParameter(String),
    /// The vertex universe cap (512) would be exceeded.
    TooManyVertices { requested: usize, cap: usize },
    /// A vertex index is out of range for the universe it is used with.
    VertexOutOfRange { vertex: usize, universe: usize },
    /// A shift operator was applied to vertices it is not defined for.
    InvalidShift(String),
    /// A statistic that needs at least two members was requested on a smaller family.
    UndefinedStatistic(String),
    /// A family member is not contained in the supplied ground set.
    InvalidGround { member_index: usize },
    /// An operation requiring a complete base met a member with two base vertices.
    NotApplicable(String),
    /// The solver refused to run: the family exceeds the configured member cap.
    /// `lower_bound` is the size of the best star, a valid intersecting family.
    ResourceLimit {
        members: usize,
        cap: usize,
        lower_bound: usize,
    },
    /// A file could not be parsed.
    Parse(String),
    /// Wrapped I/O error message.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyGraph => write!(f, "graph must have at least one vertex"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::TooManyVertices { requested, cap } => {
                write!(f, "graph would have {requested} vertices, cap is {cap}")
            }
            Error::VertexOutOfRange { vertex, universe } => {
                write!(f, "vertex {vertex} out of range for universe {universe}")
            }
            Error::InvalidShift(msg) => write!(f, "invalid shift: {msg}"),
            Error::UndefinedStatistic(msg) => write!(f, "undefined statistic: {msg}"),
            Error::InvalidGround { member_index } => {
                write!(f, "member {member_index} is not a subset of the ground set")
            }
            Error::NotApplicable(msg) => write!(f, "not applicable: {msg}"),
            Error::ResourceLimit {
                members,
                cap,
                lower_bound,
            } => write!(
                f,
                "family has {members} members, exceeding the cap of {cap} \
                 (greedy lower bound {lower_bound}); raise the cap to solve exactly"
            ),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Io(msg) => write!(f, "I/O error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
