use alloc::string::String;

/// Errors raised by the core crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported lattice operation: {0}")]
    UnsupportedLattice(String),
    #[error("sigma vanishes identically")]
    DegenerateSigma,
    #[error("pole on grid at s = {0}")]
    PoleOnGrid(i64),
    #[error("generalized power vanishes at grid point s = {0}")]
    DenominatorZero(i64),
    #[error("no relation found up to deg Q = {0}")]
    NoRelation(usize),
    #[error("degenerate spec: {0}")]
    DegenerateSpec(String),
    #[error("boundary condition violated: {0}")]
    BoundaryViolated(String),
    #[error("all samples degenerate after {0} attempts")]
    AllSamplesDegenerate(usize),
    #[error("degenerate tau: leading coefficient of tau_{0} vanishes")]
    DegenerateTau(i64),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("singular system: {0}")]
    SingularSystem(String),
    #[error("registration failure: {0}")]
    RegistrationFailure(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
