use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed quiver description: {0}")]
    Malformed(String),
    #[error("quiver is cyclic: {0}")]
    Cyclic(String),
    #[error("underlying graph is not of Dynkin type: {0}")]
    NonDynkin(String),
    #[error("quiver is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("dimension vector has {got} entries but the quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("`{object}` lies outside the shift window [{lo}, {hi}]")]
    WindowOverflow { object: String, lo: i32, hi: i32 },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("clique enumeration exceeded the cap of {0}")]
    CapExceeded(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
