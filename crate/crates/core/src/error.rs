use alloc::string::String;

/// Errors raised by the exact engines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("coefficient {index} requested from a series truncated at order {order}")]
    Truncation { index: usize, order: usize },
    #[error("series is not invertible (zero constant term)")]
    NonInvertible,
    #[error("composition requires an inner series with zero constant term")]
    Composition,
    #[error("reversion requires f(0) = 0 and f'(0) != 0")]
    Reversion,
    #[error("unsupported parameters: {0}")]
    Unsupported(&'static str),
    #[error("enumeration over {size} elements exceeds the bound of {bound}")]
    ResourceGuard { size: usize, bound: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
