use thiserror::Error;

use crate::quantale::QuantaleError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Quantale(#[from] QuantaleError),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("spaces are over different quantales")]
    QuantaleMismatch,
    #[error("filters live on carriers of different sizes ({0} and {1})")]
    SpaceMismatch(usize, usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A hypothesis of the requested construction fails; the message names it
    /// and carries its witness.
    #[error("refused: {0}")]
    Refused(String),
    #[error("degenerate quantale: {0}")]
    Degenerate(String),
    /// Two computations that must agree did not.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("{0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
