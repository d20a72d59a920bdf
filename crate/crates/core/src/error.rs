use std::fmt;

use thiserror::Error;

use crate::poset::ValidationReport;

/// Byte range into a recipe expression.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("order {order} is out of range (supported: {min}..={max})")]
    OrderOutOfRange {
        order: usize,
        min: usize,
        max: usize,
    },

    #[error("position {position} is out of range for a matrix of order {order}")]
    PositionOutOfRange { position: usize, order: usize },

    #[error("the element subset is empty")]
    EmptySubset,

    #[error("invalid labels: {0}")]
    InvalidLabels(String),

    #[error("not a poset matrix: {0}")]
    Axioms(ValidationReport),

    #[error(
        "matrix is not stored in a linear extension: row {} lies above row {} \
         but is stored before it (normalize the matrix first)",
        .upper + 1,
        .lower + 1
    )]
    NotLowerTriangular { upper: usize, lower: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("recipe error at {span}: {message}")]
    Recipe { span: Span, message: String },

    #[error("order-5 table row {row}: {reason}")]
    CatalogIntegrity { row: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn recipe(span: Span, message: impl Into<String>) -> Self {
        Error::Recipe {
            span,
            message: message.into(),
        }
    }

    /// Whether the error is a syntax or usage problem rather than a negative
    /// answer about well-formed input.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Malformed(_)
                | Error::OrderOutOfRange { .. }
                | Error::PositionOutOfRange { .. }
                | Error::EmptySubset
                | Error::InvalidLabels(_)
                | Error::Parse { .. }
                | Error::Recipe { .. }
                | Error::Io(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
