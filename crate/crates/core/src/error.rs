use thiserror::Error;

/// Crate-wide error type.
///
/// Exit-code mapping for the CLI: validation-type errors map to 2,
/// precision/stability errors map to 3.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("singular input: {0}")]
    SingularInput(String),
    #[error("orbit is not regular semisimple: {0}")]
    NotRegularSemisimple(String),
    #[error("lattice enumeration box unstable: {0}")]
    BoxUnstable(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureNonconvergent(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("series did not converge: {0}")]
    SeriesNonconvergent(String),
    #[error("schwartz window overflow: {0}")]
    WindowOverflow(String),
    #[error("family is coherent, incoherence invariant violated: {0}")]
    IncoherenceViolated(String),
    #[error("parity error: {0}")]
    ParityError(String),
    #[error("missing place data: {0}")]
    MissingPlaceData(String),
    #[error("evaluation point lies on the divisor: {0}")]
    OnDivisor(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that signal "retry at higher precision / larger box".
    pub fn is_instability(&self) -> bool {
        matches!(self, Error::PrecisionExhausted(_) | Error::BoxUnstable(_))
    }
}
