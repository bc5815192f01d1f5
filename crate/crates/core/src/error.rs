use thiserror::Error;

use crate::term::Position;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid position {0} for term")]
    InvalidPosition(Position),
    #[error("malformed position `{0}`")]
    BadPosition(String),
    #[error("rule does not match at position {0}")]
    NoMatch(Position),
}

/// Errors raised while reading a TRS or a term.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: ill-formed rule: {message}")]
    IllFormedRule {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: arity conflict for `{symbol}`: used with {found} arguments, previously {expected}")]
    ArityConflict {
        line: usize,
        column: usize,
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("{line}:{column}: unsupported section `{section}`: {message}")]
    Unsupported {
        line: usize,
        column: usize,
        section: String,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("system is not layered; rank is undefined")]
    NotLayered,
    #[error("candidate is not an instance of the canonical unifier: {0}")]
    NotAnInstance(String),
    #[error("no cyclic critical pair numbered {0}")]
    NoSuchPair(usize),
}
