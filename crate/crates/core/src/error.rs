use thiserror::Error;

/// Errors produced by the cycle library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum OttoError {
    /// Parameters that leave the physical domain: a non-positive or imaginary
    /// normal-mode frequency, a non-positive temperature, and so on.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("inconsistent energy balance: W = {work}, Q_h + Q_c = {sum}")]
    InconsistentEnergy { work: f64, sum: f64 },

    #[error("modes operate in different regimes ({a:?} vs {b:?}); no common figure of merit")]
    RegimeMismatch {
        a: crate::cycle::Regime,
        b: crate::cycle::Regime,
    },

    #[error("hot and cold baths have equal temperature")]
    DegenerateBaths,

    #[error("unknown model tag `{0}`")]
    UnknownModel(String),

    #[error("empty search domain: {0}")]
    EmptyDomain(String),

    #[error("numerical error: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, OttoError>;

pub(crate) fn domain(msg: impl Into<String>) -> OttoError {
    OttoError::Domain(msg.into())
}
