use alloc::string::String;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Caller violated an operation's precondition (mismatched sizes, bad parameters).
    #[error("usage error: {0}")]
    Usage(String),
    /// A rational could not be mapped into GF(p) because p divides a denominator.
    #[error("denominator divisible by the prime {prime}")]
    Reduction { prime: u64 },
    /// Malformed polynomial text.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    /// A rational map was evaluated on its base locus.
    #[error("map undefined at the given point: {0}")]
    BaseLocus(String),
    /// Random sampling did not produce a general enough point within budget.
    #[error("genericity failure: {0}")]
    Genericity(String),
    /// No point on the hypersurface was found within the line budget.
    #[error("sampling failure after {lines} random lines")]
    Sampling { lines: usize },
    /// The polynomial supplied as a relation does not annihilate the gradient.
    #[error("not a relation among the partial derivatives")]
    NotARelation,
    /// The hyperplane divides the form.
    #[error("hyperplane is contained in the hypersurface")]
    HyperplaneInHypersurface,
    /// Input does not have the required canonical shape.
    #[error("not in canonical form: {0}")]
    NotCanonical(String),
    /// A family constructor could not honour its defining shape.
    #[error("construction error: {0}")]
    Construction(String),
    /// The evaluated matrix vanishes identically where a nonzero one was required.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
