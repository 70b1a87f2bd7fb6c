use thiserror::Error;

/// Errors raised by the evaluators. Verification failures are never errors;
/// they land in a [`crate::report::VerificationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{name} = {value} is outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: String,
        domain: &'static str,
    },
    #[error("recurrence coefficient {which}({index}) is zero")]
    ZeroCoefficient { which: &'static str, index: u64 },
    #[error("coefficient depth {0} is not reachable by the recurrence cascade (supported: 0, 1, 2)")]
    UnsupportedDepth(usize),
    #[error("x = {0} is outside the series range [0, 4]")]
    UnsupportedRange(String),
    #[error("acceleration needs at least 6 partial sums, got {0}")]
    InsufficientData(usize),
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(name: &'static str, value: impl ToString, domain: &'static str) -> Error {
    Error::Domain {
        name,
        value: value.to_string(),
        domain,
    }
}
