use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("unsupported matrix dimension {0} (expected 2 or 4)")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian (max |a - a^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("not PSD: eigenvalue {0:e} below tolerance")]
    NotPsd(f64),

    #[error("singular rate: the literal 1/(2 alpha) convention requires alpha > 0")]
    SingularRate,

    #[error("coupling J must be nonzero for this operation")]
    ZeroCoupling,

    #[error("RK4 step too large for stability guard; use at least {min_steps} steps")]
    StepTooLarge { min_steps: usize },

    #[error("{0} outside its domain [0, 1]")]
    OutOfDomain(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no finite optimum: brachistochrone time diverges without decoherence (alpha = 0)")]
    NoFiniteOptimum,

    #[error("density matrix does not have the two-spin block shape (outer entry {0:e})")]
    BlockShape(f64),

    #[error("grid too coarse at step {step}: branch overlap {overlap:.4}, weight change {weight_step:.4}")]
    GridTooCoarse {
        step: usize,
        overlap: f64,
        weight_step: f64,
    },

    #[error("phase undefined: vanishing eigenvalue support")]
    PhaseUndefined,

    #[error("Pancharatnam phase singular: orthogonal endpoint")]
    OrthogonalEndpoint,
}
