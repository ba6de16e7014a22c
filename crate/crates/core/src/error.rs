use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("operator set is not trace preserving (max |sum K'K - I| = {0:.3e})")]
    NotCptp(f64),
    #[error("measurement outcome has vanishing probability ({0:.3e})")]
    ImpossibleOutcome(f64),
    #[error("independent computation routes disagree (max deviation {0:.3e})")]
    RouteMismatch(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
