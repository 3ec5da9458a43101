use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input that does not parse or does not fit the expected shape.
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("degree {degree} is outside the computed range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("unsupported duality: {0}")]
    UnsupportedDuality(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("missing cup product table for degrees ({0}, {1})")]
    MissingCupTable(usize, usize),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
}

impl Error {
    /// Whether the failure stems from bad input rather than a broken invariant.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Malformed(_) | Error::NotComposable(_) | Error::BaseMismatch(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
