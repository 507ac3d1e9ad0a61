use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid singularity: {0}")]
    InvalidSingularity(String),
    #[error("invalid role assignment: {0}")]
    InvalidRoles(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid floor system: {0}")]
    InvalidSystem(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
