use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected c1 of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("operation needs a Néron-Severi rank 1 surface")]
    NotRankOne,
    #[error("vector {0} is not primitive")]
    NotPrimitive(String),
    #[error("vector has square {0}; a positive square is required")]
    NonPositiveSquare(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("class is proportional to v")]
    Proportional,
    #[error("{0} does not define a wall for v")]
    NotAWall(String),
    #[error("charge ({0}) lies outside the admissible half-plane")]
    InadmissibleCharge(String),
    #[error("point lies on the wall {pqr} (witness {witness})")]
    OnWall { pqr: String, witness: String },
    #[error("invalid group element: {0}")]
    InvalidGroupElement(String),
    #[error("half-plane action degenerates at this point")]
    DegenerateAction,
    #[error("search exhausted its bound {0} without a decision")]
    Undecided(String),
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
