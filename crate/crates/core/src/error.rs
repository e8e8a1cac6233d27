use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("amplitude vector has length {got}, dims require {want}")]
    LengthMismatch { want: usize, got: usize },

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not unitary within {tol} (deviation {dev:.3e})")]
    NonUnitary { dev: f64, tol: f64 },

    #[error("not a valid permutation of {0} parties")]
    InvalidPermutation(usize),

    #[error("invalid bipartition: {0}")]
    InvalidCut(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("shape {d1}x{d2} has {cells} cells, exceeding the enumeration cap {cap}")]
    CapExceeded {
        d1: usize,
        d2: usize,
        cells: usize,
        cap: usize,
    },

    #[error("rank {rank} does not fit in a {d1}x{d2} arrangement")]
    InvalidRank { rank: usize, d1: usize, d2: usize },

    #[error("spectrum of length {len} cannot be padded to {cells} cells: trailing coefficient {coeff:.3e} is nonzero")]
    PadTruncation { len: usize, cells: usize, coeff: f64 },

    #[error("determinant {0} out of range for a unit-Frobenius 2x2 matrix")]
    DetOutOfRange(f64),

    #[error("density matrix violates {what} by {dev:.3e}")]
    NotADensityMatrix { what: &'static str, dev: f64 },

    #[error("operation only supported for {0}")]
    Unsupported(&'static str),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
