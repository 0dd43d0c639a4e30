use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square: {rows} rows but {len} entries")]
    NotSquare { rows: usize, len: usize },

    #[error("asymmetry at ({i},{j}) exceeds threshold: |delta| = {delta:e}")]
    Asymmetric { i: usize, j: usize, delta: f64 },

    #[error("non-finite entry at ({i},{j})")]
    NonFinite { i: usize, j: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("negative off-diagonal entry at ({i},{j}): {value}")]
    NegativeOffDiagonal { i: usize, j: usize, value: f64 },

    #[error("nonzero diagonal entry at ({i},{i}): {value}")]
    NonzeroDiagonal { i: usize, value: f64 },

    #[error("no nonnegative eigenvector found in the top eigenvalue cluster")]
    NoNonnegativeVector,

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid vertex sequence: entry {value} out of range 1..={n}")]
    InvalidSequence { value: usize, n: usize },

    #[error("vertex count {n} outside supported range {min}..={max}")]
    SizeOutOfRange { n: usize, min: usize, max: usize },

    #[error("condition kind requires a tree but none was given")]
    MissingTree,

    #[error("condition kind takes no tree but one was given")]
    UnexpectedTree,

    #[error("condition not satisfied at triple (i={i}, j={j}, k={k})")]
    ConditionNotSatisfied { i: usize, j: usize, k: usize },

    #[error("repair did not converge after {passes} passes")]
    RepairNonConvergence { passes: usize },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("unknown matrix family '{0}'")]
    UnknownFamily(String),

    #[error("unknown verification suite '{0}'")]
    UnknownSuite(String),

    #[error("integer overflow in exact arithmetic: {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
