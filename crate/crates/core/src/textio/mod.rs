//! Text formats: `.grp` presentations with optional subgroup generators,
//! `.perm` permutation representations, and word syntax.
//!
//! Both formats are line oriented, UTF-8, with `#` starting a comment that
//! runs to the end of the line.

mod perm_text;
mod presentation;
mod word;

use thiserror::Error;

pub use perm_text::{parse_permutations, PermutationInput, MAX_DEGREE};
pub use presentation::{
    parse_group_file, parse_presentation, parse_subgroup, parse_word, GroupFile, Presentation,
    SubgroupSpec, MAX_WORD_LENGTH,
};
pub use word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown header {0:?}")]
    UnknownHeader(String),
    #[error("duplicate {0:?} header")]
    DuplicateHeader(&'static str),
    #[error("missing {0:?} header")]
    MissingHeader(&'static str),
    #[error("text outside any block")]
    OrphanText,
    #[error("generator names must be distinct single lowercase letters, got {0:?}")]
    BadGeneratorName(String),
    #[error("expected exactly two generators, found {0}")]
    Arity(usize),
    #[error("undeclared generator {0:?}")]
    UndeclaredGenerator(char),
    #[error("number out of range")]
    NumberRange,
    #[error("expanded word exceeds {MAX_WORD_LENGTH} letters")]
    WordTooLong,
    #[error("degree must be between 1 and {MAX_DEGREE}")]
    BadDegree,
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: u64, degree: usize },
    #[error("point {0} repeated within one permutation")]
    RepeatedPoint(u64),
    #[error("no generators given")]
    NoGenerators,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

/// Strips a `#` comment and returns the remaining slice.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}
