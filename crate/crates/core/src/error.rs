use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("entry angle alpha must lie in [0, pi/2], got {0}")]
    AlphaOutOfRange(f64),
    #[error("cavities are not identical: {0} differs")]
    NotIdentical(&'static str),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("matrix is not Hermitian (max |H - H^dagger| = {0:e})")]
    NotHermitian(f64),
    #[error("Hermitian eigendecomposition did not converge")]
    Eigendecomposition,
    #[error("state vector norm deviates from 1 by {0:e}")]
    NotNormalized(f64),
    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),
    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    Dimension {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("density matrix trace deviates from 1 by {0:e}")]
    Trace(f64),
    #[error("density matrix has eigenvalue {0:e} below the round-off window")]
    NegativeEigenvalue(f64),
    #[error("need more samples than columns: {samples} samples for {columns} columns")]
    DegenerateGrid { samples: usize, columns: usize },
    #[error("non-invariance evidence requires unequal cavities")]
    IdenticalCavities,
}
