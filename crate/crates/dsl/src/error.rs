use serde::Serialize;
use thiserror::Error;

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Span {
    pub line: usize,
    pub column: usize,
}

impl Span {
    pub fn new(line: usize, column: usize) -> Self {
        Span { line, column }
    }
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{span}: lexical error: {message}")]
    Lex { span: Span, message: String },
    #[error("{span}: expected one of {expected:?}, found {found}")]
    Parse { span: Span, expected: Vec<String>, found: String },
    #[error("{span}: {message}")]
    Eval { span: Span, message: String },
    /// A kernel computation needed roots outside the declared field.
    #[error("{span}: inconclusive: {message}")]
    Inconclusive { span: Span, message: String },
}

impl DslError {
    pub fn span(&self) -> Span {
        match self {
            DslError::Lex { span, .. }
            | DslError::Parse { span, .. }
            | DslError::Eval { span, .. }
            | DslError::Inconclusive { span, .. } => *span,
        }
    }

    pub fn eval(span: Span, message: impl Into<String>) -> Self {
        DslError::Eval { span, message: message.into() }
    }

    /// Attaches a span to a kernel error.
    pub fn kernel(span: Span, e: quartica_core::Error) -> Self {
        match e {
            quartica_core::Error::FieldTooSmall(m) => DslError::Inconclusive { span, message: m },
            other => DslError::Eval { span, message: other.to_string() },
        }
    }
}

pub type DslResult<T> = Result<T, DslError>;
