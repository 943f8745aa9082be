use thiserror::Error;

use crate::diagram::ValidationReport;
use crate::normal_form::NormalForm;

/// What went wrong while parsing a word.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown character {0:?}")]
    UnknownCharacter(char),
    #[error("unexpected {0:?}")]
    Unexpected(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {want:?}, found {got:?}")]
    Expected { want: char, got: Option<char> },
    #[error("malformed exponent")]
    BadExponent,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("word is not null-homotopic; normal form {normal_form}")]
    NotNullHomotopic { normal_form: NormalForm },
    #[error("radius {radius} exceeds cap {cap} (ball has up to {estimate} elements)")]
    CapExceeded {
        radius: usize,
        cap: usize,
        estimate: u128,
    },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(ValidationReport),
    #[error("diagram is not reduced: cells {0} and {1} are a mirror pair")]
    NotReduced(usize, usize),
    #[error("bad partition: {0}")]
    Partition(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Usage-style errors (as opposed to mathematical outcomes).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::Json(_) | Error::Io(_) | Error::Partition(_)
        )
    }
}
