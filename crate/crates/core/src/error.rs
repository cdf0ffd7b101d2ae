use thiserror::Error;

/// Errors raised by the numerical kernels, samplers and evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("pole of the gamma function at {0}")]
    Pole(f64),

    #[error("unsupported Meijer G parameter class: {0}")]
    UnsupportedMeijer(String),

    #[error("{what} did not converge (estimated error {achieved:e})")]
    NonConvergence { what: &'static str, achieved: f64 },

    #[error("degenerate region: {0}")]
    DegenerateRegion(&'static str),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("empty sample set")]
    EmptySample,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}
