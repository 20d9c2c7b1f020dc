//! Shared helpers for the line-oriented input formats.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Parse failure with a 1-based position.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[error("line {line}, column {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl fmt::Display) -> Self {
        ParseError {
            line,
            col,
            message: message.to_string(),
        }
    }
}

/// Whitespace-separated token with its 1-based starting column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub col: usize,
}

/// One non-blank line after stripping `#` comments.
#[derive(Clone, Debug)]
pub struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
    /// Column just past the last token, for "missing argument" errors.
    pub end_col: usize,
}

impl<'a> Line<'a> {
    pub fn error(&self, col: usize, message: impl fmt::Display) -> ParseError {
        ParseError::new(self.number, col, message)
    }

    pub fn token(&self, i: usize, what: &str) -> Result<Token<'a>, ParseError> {
        self.tokens
            .get(i)
            .copied()
            .ok_or_else(|| self.error(self.end_col, format!("expected {what}")))
    }

    pub fn expect_len(&self, n: usize) -> Result<(), ParseError> {
        match self.tokens.get(n) {
            Some(t) => Err(self.error(t.col, format!("unexpected `{}`", t.text))),
            None => Ok(()),
        }
    }
}

pub fn lines(src: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (j, ch) in body.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push(Token {
                        text: &body[s..j],
                        col: s + 1,
                    });
                }
            } else if start.is_none() {
                start = Some(j);
            }
        }
        if let Some(s) = start {
            tokens.push(Token {
                text: &body[s..],
                col: s + 1,
            });
        }
        if !tokens.is_empty() {
            let last = tokens.last().unwrap();
            let end_col = last.col + last.text.len();
            out.push(Line {
                number: i + 1,
                tokens,
                end_col,
            });
        }
    }
    out
}

/// Error position for input that ends before a required declaration.
pub fn eof_error(src: &str, message: impl fmt::Display) -> ParseError {
    let line = src.lines().count().max(1);
    let col = src.lines().last().map_or(0, str::len) + 1;
    ParseError::new(line, col, message)
}

pub fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '\''))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizes_with_columns() {
        let ls = lines("  node a solid  # c\n\n# only comment\nedge a  a\n");
        assert_eq!(ls.len(), 2);
        assert_eq!(ls[0].number, 1);
        assert_eq!(
            ls[0].tokens[0],
            Token {
                text: "node",
                col: 3
            }
        );
        assert_eq!(ls[0].tokens[2].col, 10);
        assert_eq!(ls[1].number, 4);
        assert_eq!(ls[1].tokens[2].col, 9);
    }
}
