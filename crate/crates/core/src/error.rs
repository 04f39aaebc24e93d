use thiserror::Error;

/// Errors raised by the counting, distribution and sampling routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An exhaustive enumeration was requested above the configured cap.
    #[error("exhaustive enumeration of n = {n} exceeds the oracle cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    /// The requested cap is above the hard limit of [`crate::permutation::MAX_ORACLE_CAP`].
    #[error("oracle cap {requested} is above the hard limit of {limit}")]
    CapTooLarge { requested: usize, limit: usize },

    /// An argument is outside the domain where the quantity is defined.
    #[error("{what} is undefined for {detail}")]
    Domain { what: &'static str, detail: String },

    /// A mapping that is not a bijection on `0..n`.
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    /// A cycle type whose weighted sum does not match its size.
    #[error("invalid cycle type: sum of i*a_i is {weighted_sum}, expected {n}")]
    InvalidCycleType { n: usize, weighted_sum: usize },

    /// The rational bracket around `n!/e` straddled a rounding boundary.
    #[error("certified rounding of {n}!/e did not resolve")]
    RoundingUnresolved { n: usize },

    /// Empirical and exact distributions were built for different sizes.
    #[error("size mismatch: sample report has n = {report}, distribution has n = {dist}")]
    SizeMismatch { report: usize, dist: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        what,
        detail: detail.into(),
    }
}
