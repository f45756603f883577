use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid subsystem dimensions: {0}")]
    InvalidDims(String),

    #[error("subsystem index {index} out of range for {count} subsystems")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("subsystem selection must not be empty")]
    EmptySelection,

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("state is not pure (purity {0})")]
    NotPure(f64),

    #[error("rank {rank} out of range 1..={dim}")]
    RankOutOfRange { rank: usize, dim: usize },

    #[error(
        "measured subsystem has dimension {0}; only qubit measurements are optimized \
         (use the Koashi-Winter route in `bounds` for larger complements)"
    )]
    UnsupportedDimension(usize),

    #[error("state is rank deficient (smallest eigenvalue {0:e})")]
    RankDeficient(f64),

    #[error("consensus parameter undefined: H(rho_S) = {0:e}")]
    UndefinedConsensus(f64),

    #[error("environment audit requires a pure global state")]
    MixedEnvironment,

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("state too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
