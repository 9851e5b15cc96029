//! Textual formats: the SLA document grammar, the metric trace CSV, and
//! DIMACS CNF interchange.
//!
//! All three parsers report failures as [`ParseError`] with a 1-based
//! [`SourceSpan`] into the offending input.

mod dimacs;
mod lexer;
mod sla_text;
mod trace;

pub use dimacs::{export_dimacs, parse_dimacs};
pub use sla_text::{parse_sla, serialize_sla};
pub use trace::parse_trace;

/// A half-open region of source text, for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    /// 1-based line.
    pub line: u32,
    /// 1-based column, in characters.
    pub column: u32,
    /// Length in characters; 0 marks a bare position (e.g. end of input).
    pub length: u32,
}

impl SourceSpan {
    pub fn new(line: u32, column: u32, length: u32) -> Self {
        Self {
            line,
            column,
            length,
        }
    }
}

/// Broad failure category, mostly useful to tests and tooling; the
/// rendered message is the user-facing part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Lexical or grammatical failure.
    Syntax,
    /// Well-formed syntax carrying a meaningless value.
    Value,
    /// Structurally parseable but rejected by semantic validation.
    Validation,
    /// Two samples for one indicator at the same instant.
    DuplicateSample,
    /// Integer literal outside the representable or declared range.
    LiteralOutOfRange,
    /// Malformed file header.
    Header,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    /// What the parser would have accepted instead, when that is crisp.
    pub expected: Option<String>,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(
        span: SourceSpan,
        kind: ParseErrorKind,
        message: impl Into<String>,
    ) -> Self {
        Self {
            span,
            message: message.into(),
            expected: None,
            kind,
        }
    }

    pub fn expecting(mut self, expected: impl Into<String>) -> Self {
        self.expected = Some(expected.into());
        self
    }
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.span.line, self.span.column, self.message
        )?;
        if let Some(expected) = &self.expected {
            write!(f, " (expected {expected})")?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}
