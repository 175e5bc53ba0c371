use thiserror::Error;

/// Errors raised by the algebra, complex and deformation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("phi must be a nonzero polynomial")]
    ZeroPhi,
    #[error("phi has a multiple root (gcd(phi, phi') = {0}); the algebra is not homologically smooth because phi(z) has multiple roots")]
    MultipleRoot(String),
    #[error("both inputs are zero")]
    BothZero,
    #[error("input polynomial is zero")]
    ZeroInput,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("element is not a cycle")]
    NotCycle,
    #[error("unsupported theta_2 pattern: {0}")]
    UnsupportedPattern(String),
    #[error("the algebra is commutative (lambda = 1, eta = 0)")]
    CommutativeAlgebra,
    #[error("mixed parameters (lambda != 1 and eta != 0) are not supported")]
    MixedCase,
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
