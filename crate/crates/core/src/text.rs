//! Line/token scanning shared by the plain-text formats.
//!
//! All formats are whitespace-delimited with LF line endings. Blank lines and
//! lines whose first non-blank character is `#` are skipped.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

impl<'a> Token<'a> {
    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, message)
    }

    pub fn parse_usize(&self, what: &str) -> Result<usize> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected {what}, found `{}`", self.text)))
    }

    pub fn parse_u32(&self, what: &str) -> Result<u32> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected {what}, found `{}`", self.text)))
    }

    pub fn single_char(&self, what: &str) -> Result<char> {
        let mut chars = self.text.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(self.error(format!("expected a single-character {what}, found `{}`", self.text))),
        }
    }

    /// Splits `key=value`, checking the key.
    pub fn key_value(&self, key: &str) -> Result<Token<'a>> {
        match self.text.split_once('=') {
            Some((k, v)) if k == key => Ok(Token {
                text: v,
                line: self.line,
                column: self.column + k.len() + 1,
            }),
            _ => Err(self.error(format!("expected `{key}=...`, found `{}`", self.text))),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub raw: &'a str,
    pub tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    pub fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.number, 1, message)
    }

    pub fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }

    /// Requires exactly `n` tokens (keyword included).
    pub fn expect_len(&self, n: usize, usage: &str) -> Result<()> {
        if self.tokens.len() == n {
            Ok(())
        } else if self.tokens.len() > n {
            Err(self.tokens[n].error(format!("unexpected token; usage: {usage}")))
        } else {
            let column = self.raw.trim_end().len() + 1;
            Err(Error::parse(self.number, column, format!("missing field; usage: {usage}")))
        }
    }

    /// The line's content with interior whitespace removed.
    pub fn compact(&self) -> String {
        self.raw.chars().filter(|c| !c.is_whitespace()).collect()
    }
}

/// Non-empty, non-comment lines of `input`.
pub(crate) fn lines(input: &str) -> Vec<Line<'_>> {
    input
        .split('\n')
        .enumerate()
        .filter_map(|(i, raw)| {
            let raw = raw.strip_suffix('\r').unwrap_or(raw);
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                return None;
            }
            let tokens = tokenize(raw, i + 1);
            Some(Line {
                number: i + 1,
                raw,
                tokens,
            })
        })
        .collect()
}

fn tokenize(raw: &str, line: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in raw.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &raw[s..i],
                    line,
                    column: raw[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &raw[s..],
            line,
            column: raw[..s].chars().count() + 1,
        });
    }
    out
}

/// Parses a comma-separated alphabet of single characters.
pub(crate) fn parse_alphabet(token: &Token<'_>) -> Result<Vec<char>> {
    let mut letters = Vec::new();
    let mut column = token.column;
    for part in token.text.split(',') {
        let mut chars = part.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => {
                if letters.contains(&c) {
                    return Err(Error::parse(token.line, column, format!("letter `{c}` listed twice")));
                }
                letters.push(c);
            }
            _ => {
                return Err(Error::parse(
                    token.line,
                    column,
                    format!("alphabet entries must be single characters, found `{part}`"),
                ))
            }
        }
        column += part.chars().count() + 1;
    }
    Ok(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skips_comments_and_tracks_columns() {
        let ls = lines("# header\n\n  tile 1  2\n");
        assert_eq!(ls.len(), 1);
        assert_eq!(ls[0].number, 3);
        assert_eq!(ls[0].tokens[1].column, 8);
        assert_eq!(ls[0].tokens[2].text, "2");
    }

    #[test]
    fn alphabet_rejects_long_letters() {
        let ls = lines("x ab,c");
        let err = parse_alphabet(&ls[0].tokens[1]).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 3, .. }));
    }
}
