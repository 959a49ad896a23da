use thiserror::Error;

/// Errors raised by the pipeline stages.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value is outside an operation's domain.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// An operation's precondition on its input structure does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A facet of the hull could not be certified at the working precision.
    #[error("numerical certification failed for facet {facet:?}: {reason}")]
    Certification { facet: Vec<usize>, reason: String },

    /// The antipodal quotient of a complex is not a simplicial complex.
    #[error("quotient is not simplicial: {0}")]
    QuotientNotSimplicial(String),

    /// A result failed its own post-hoc validation; signals a bug or inputs
    /// violating the hypotheses the construction relies on.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
