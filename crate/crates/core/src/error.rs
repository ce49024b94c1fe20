use thiserror::Error;

/// Errors raised by the linear algebra, channel, entropic and region layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("Kraus set is not trace preserving (max deviation {0:e})")]
    NotTracePreserving(f64),
    #[error("unit protocol rate must be nonnegative, got {0}")]
    NegativeRate(f64),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("operator is not a valid POVM element: {0}")]
    NotValidPovmElement(String),
    #[error("state carries no auxiliary environment subsystem to dephase")]
    NoEnvironmentSplit,
    #[error("invalid region constants: {0}")]
    InvalidRegion(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            range: "[0, 1]",
        })
    }
}
