/// Errors produced by constructors and formula evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A mathematical precondition is violated (bad bracket, argument
    /// outside the function domain, target outside the attainable range).
    #[error("domain error: {0}")]
    Domain(String),
    /// Input data is unusable (invalid parameter combination, degenerate
    /// scan, missing field).
    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
