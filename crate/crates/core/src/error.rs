use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown or invalid Lie type {0}")]
    InvalidType(String),
    #[error("rank {0} exceeds the supported maximum of 8")]
    RankTooLarge(usize),
    #[error("enumeration of {what} needs {needed} elements, budget is {budget}")]
    BudgetExceeded { what: String, needed: u64, budget: u64 },
    #[error("invalid root subsystem: {0}")]
    InvalidSubsystem(String),
    #[error("point is outside the fundamental alcove: {0}")]
    OutsideAlcove(String),
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {0} is not integral")]
    NotIntegral(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("series built over different generator tables")]
    TableMismatch,
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("too many generators: {0}")]
    TooManyGenerators(String),
    #[error("series operation needs {0}")]
    ConstantTerm(String),
    #[error("matrix is singular at constant order")]
    Singular,
    #[error("polynomial is not invariant: {0}")]
    NotInvariant(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("parse error in {input:?} at position {position}: {message}")]
    Parse { input: String, position: usize, message: String },
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("point is singular: {0}")]
    SingularPoint(String),
    #[error("summation diverges: {0}")]
    Divergence(String),
    #[error("quadrature mesh {mesh} does not exceed bandwidth {bandwidth}")]
    MeshTooCoarse { mesh: usize, bandwidth: usize },
    #[error("finite-difference estimate unstable: {0}")]
    Unstable(String),
    #[error("{0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
