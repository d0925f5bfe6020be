use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid wall: the normal vector is zero")]
    InvalidWall,
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("invalid radius {0}: must be at least 1")]
    InvalidRadius(usize),
    #[error("insufficient patch radius: {0}")]
    InsufficientRadius(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("zero direction")]
    ZeroDirection,
    #[error("point {0} is not in the zonotope")]
    NotInZonotope(String),
    #[error("vector {0} is not a generator")]
    NotAGenerator(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("point {0} is outside the patch")]
    OutsidePatch(String),
    #[error("no gradient: the height is zero")]
    NoGradient,
    /// A statement that must hold for the construction was found to fail.
    /// Carries a reproducible witness.
    #[error("theorem violated in check `{check}`: {witness}")]
    TheoremViolation { check: String, witness: String },
    #[error("unsupported building or subcomplex spec: {0}")]
    UnsupportedSpec(String),
    #[error("chamber is not in the base apartment")]
    NotInApartment,
    #[error("unknown suite: {0}")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    pub fn violation(check: &str, witness: impl Into<String>) -> Self {
        Error::TheoremViolation { check: check.to_string(), witness: witness.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
