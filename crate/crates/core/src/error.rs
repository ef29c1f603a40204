use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("empty generator list")]
    NoGenerators,
    #[error("group too large: more than {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("not simple: {0}")]
    NotSimple(String),
    #[error("vertex cap exceeded: {vertices} > {cap}")]
    VertexCap { vertices: usize, cap: usize },
    #[error("enumeration too large ({size} > {cap}); raise cap or reduce n")]
    EnumerationTooLarge { size: usize, cap: usize },
    #[error("no relabeling defined for {0}")]
    NoRelabeling(String),
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("inconsistent cycle: {0}")]
    InconsistentCycle(String),
    #[error("not a map: {0}")]
    NotAMap(String),
    #[error("not a surface embedding: {0}")]
    NotSurface(String),
    #[error("non-polytopal: duplicate flag (vertex {vertex}, edge {edge}, face {face})")]
    NonPolytopal { vertex: usize, edge: usize, face: usize },
    #[error("Petrial not polytopal")]
    PetrialNotPolytopal,
    #[error("non-free flag action: {0}")]
    NonFree(String),
    #[error("count mismatch: {0}")]
    CountMismatch(String),
    #[error("unknown format: {0}")]
    UnknownFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GroupTooLarge { .. } | Error::VertexCap { .. } | Error::EnumerationTooLarge { .. } => 2,
            Error::InvalidParams(_) | Error::NotSimple(_) | Error::UnknownFormat(_) | Error::PointOutOfRange { .. } => {
                3
            }
            _ => 1,
        }
    }
}
