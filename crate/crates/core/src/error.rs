use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not skew-symmetric (residual {0:.3e})")]
    NotSkew(f64),

    #[error("matrix is not orthogonal (residual {0:.3e})")]
    NotOrthogonal(f64),

    #[error("basis of V is linearly dependent")]
    DependentBasis,

    #[error("inner product on V is not symmetric positive definite")]
    NotPositiveDefinite,

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("inner product is not admissible for this family: {0}")]
    InadmissibleGram(String),

    #[error("pair is not in quaternionic block form: {0}")]
    NotBlockForm(String),

    #[error("subspace is not contained in V")]
    NotInV,

    #[error("{0}")]
    WrongKind(String),

    #[error("not an intertwiner: {0}")]
    NotIntertwiner(String),

    #[error("singular map A_{0}")]
    SingularBlockMap(usize),

    #[error("witness search failed after {restarts} restarts (best penalty {best:.3e})")]
    SearchFailed { restarts: usize, best: f64 },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
