use thiserror::Error;

/// Errors raised by the algebra layer and the map algorithms built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("expected {expected} images, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("polynomial is not bihomogeneous")]
    NotBihomogeneous,
    #[error("the zero polynomial has no bidegree")]
    ZeroHasNoBidegree,
    #[error("ring is not bigraded")]
    NotBigraded,
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
    #[error("cannot take a quotient by the zero polynomial")]
    ZeroDivisor,
    #[error("empty input")]
    EmptyInput,
    #[error("monomial order mismatch")]
    OrderMismatch,
    #[error("form {0} is not homogeneous")]
    InhomogeneousForm(usize),
    #[error("form {index} has degree {found}, expected {expected}")]
    DegreeMismatch { index: usize, expected: u32, found: u32 },
    #[error("all forms vanish modulo the source ideal")]
    AllFormsZero,
    #[error("image is not contained in the target: relation {0} does not vanish")]
    NotInTarget(usize),
    #[error("maps have different sources or targets")]
    SourceTargetMismatch,
    #[error("the coordinate ring is not a domain")]
    NotDomain,
    #[error("exact division failed")]
    ExactDivision,
    #[error("the map is not birational onto its image")]
    NotBirational,
    #[error("Simis escalation gave up after {stages} stages")]
    StepLimitExceeded { stages: usize },
    #[error("no inverse representative found")]
    NoInverseFound,
    #[error("expected {expected} target variables, found {found}")]
    TargetArity { expected: usize, found: usize },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
