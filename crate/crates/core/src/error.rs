use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series has truncation order 0 and cannot be differentiated")]
    DegenerateSeries,

    #[error("division by a series with vanishing constant term")]
    NonInvertibleSeries,

    #[error("{0} is outside its domain: {1}")]
    Domain(&'static str, String),

    #[error("polynomial vanishes at interval endpoint {0}")]
    EndpointRoot(String),

    #[error("expected exactly one root in the interval, found {0}")]
    AmbiguousRoot(usize),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("elimination produced an unexpected structure: {0}")]
    EliminationStructure(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain(what, detail.into())
    }
}
