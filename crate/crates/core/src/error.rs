use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("entry count {len} does not match shape {rows}x{cols}")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("matrix is not Hermitian (max |A - A†| = {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("eigendecomposition did not converge")]
    Eigen,
    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },
    #[error("time grid is not strictly ascending at index {index}")]
    NonAscendingGrid { index: usize },
    #[error("{0} grid is empty")]
    EmptyGrid(&'static str),
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("state has support at n = {level}, needs n <= n_max - 2 = {limit}")]
    TruncationSupport { level: usize, limit: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
