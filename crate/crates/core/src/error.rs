use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("jet dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("non-invertible jet")]
    NonInvertibleJet,

    #[error("jet order exhausted")]
    OrderExhausted,

    #[error("no exact square root: {0}")]
    NoExactSqrt(String),

    #[error("degenerate metric at base point")]
    DegenerateMetric,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid block {block} for shape {shape}")]
    InvalidBlock { block: usize, shape: String },

    #[error("slot {slot} out of range for rank {rank}")]
    InvalidSlot { slot: usize, rank: usize },

    #[error("antisymmetry violated: {0}")]
    AntisymmetryViolated(String),

    #[error("not a Riemann candidate: {0}")]
    NotRiemannCandidate(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("unknown geometry `{0}`")]
    UnknownGeometry(String),

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("insufficient jet order: need {needed}, have {have}")]
    InsufficientOrder { needed: u32, have: u32 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("input contract violated: {0}")]
    InputContract(String),

    #[error("the flat torus solver needs a positive-definite metric: {0}")]
    IndefiniteTorus(String),
}

pub type Result<T> = std::result::Result<T, Error>;
