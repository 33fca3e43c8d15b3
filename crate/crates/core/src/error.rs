use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("atom {index} has norm {norm:e}, atoms must be nonzero")]
    ZeroAtom { index: usize, norm: f64 },

    #[error("polar polytope is unbounded: atoms span a {rank}-dimensional subspace of R^{dim}")]
    UnboundedPolar { rank: usize, dim: usize },

    #[error("enumeration of {count} subsets exceeds the limit of {limit}")]
    GuardExceeded { count: u128, limit: u128 },

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("simplex exceeded {0} pivots")]
    IterationLimit(usize),

    #[error("dual point is not an optimal certificate for this signal: {0}")]
    InconsistentCertificate(String),

    #[error("invalid signed support: {0}")]
    InvalidSupport(String),
}

pub type Result<T> = std::result::Result<T, Error>;
