//! Line-based text formats for machines, rewriting systems, reduction
//! manifests, correspondence instances, bi-infinite instances, and
//! candidates.
//!
//! Every format shares the same skeleton: one `key: value` record per
//! line, full-line `#` comments, blank lines ignored, words serialized as
//! whitespace-separated letter spellings, and `->` and `|` as the only
//! in-value delimiters. Writers emit deterministic output that the
//! matching parser reads back bit-exactly.

use std::fmt;

use crate::wordcore::{Letter, Word};

mod instance;
mod machine;
mod reduction;
mod system;
mod zpcp;

pub use instance::{parse_instance, write_instance};
pub use machine::{parse_machine, write_machine, MachineParseError};
pub use reduction::{assemble_reduction, parse_manifest, write_manifest, ReductionManifest};
pub use system::{parse_system, write_system};
pub use zpcp::{
    parse_candidate, parse_zpcp_instance, write_candidate, write_zpcp_instance,
};

/// A syntax or consistency error, referencing the 1-based source line;
/// line 0 stands for the file as a whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

pub(crate) fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Iterates over meaningful lines: trimmed, 1-based numbering, comments
/// and blanks skipped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        (!line.is_empty() && !line.starts_with('#')).then_some((i + 1, line))
    })
}

/// Splits a record into its key and value at the first colon.
pub(crate) fn split_key(line_no: usize, line: &str) -> Result<(&str, &str), ParseError> {
    let (key, value) = line
        .split_once(':')
        .ok_or_else(|| err(line_no, format!("expected a key: value record, found {line:?}")))?;
    Ok((key.trim(), value.trim()))
}

pub(crate) fn parse_word(line_no: usize, text: &str) -> Result<Word, ParseError> {
    Word::parse(text).map_err(|e| err(line_no, e.to_string()))
}

pub(crate) fn parse_letter(line_no: usize, text: &str) -> Result<Letter, ParseError> {
    let word = parse_word(line_no, text)?;
    match &word[..] {
        [letter] => Ok(letter.clone()),
        _ => Err(err(line_no, format!("expected a single letter, found {text:?}"))),
    }
}

/// Splits a value of the shape `left -> right`.
pub(crate) fn split_arrow(line_no: usize, value: &str) -> Result<(&str, &str), ParseError> {
    let (left, right) = value
        .split_once("->")
        .ok_or_else(|| err(line_no, format!("expected left -> right, found {value:?}")))?;
    Ok((left.trim(), right.trim()))
}

/// Formats a record, omitting the trailing space for empty values.
pub(crate) fn record(key: &str, value: &str) -> String {
    if value.is_empty() {
        format!("{key}:\n")
    } else {
        format!("{key}: {value}\n")
    }
}

/// Remembers a single-occurrence field.
pub(crate) struct Field<T> {
    name: &'static str,
    value: Option<T>,
}

impl<T> Field<T> {
    pub(crate) fn new(name: &'static str) -> Self {
        Field { name, value: None }
    }

    pub(crate) fn set(&mut self, line_no: usize, value: T) -> Result<(), ParseError> {
        if self.value.is_some() {
            return Err(err(line_no, format!("duplicate {} record", self.name)));
        }
        self.value = Some(value);
        Ok(())
    }

    pub(crate) fn take(self) -> Result<T, ParseError> {
        self.value
            .ok_or_else(|| err(0, format!("missing {} record", self.name)))
    }

    /// For fields that may be absent.
    pub(crate) fn optional(self) -> Option<T> {
        self.value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blanks_are_skipped() {
        let text = "# heading\n\n  a: 1\n   # indented comment\nb: 2\n";
        let lines: Vec<(usize, &str)> = content_lines(text).collect();
        assert_eq!(lines, vec![(3, "a: 1"), (5, "b: 2")]);
    }

    #[test]
    fn records_split_at_the_first_colon() {
        assert_eq!(split_key(1, "key: a: b").unwrap(), ("key", "a: b"));
        assert!(split_key(4, "no delimiter").is_err());
    }

    #[test]
    fn error_rendering() {
        assert_eq!(err(3, "boom").to_string(), "line 3: boom");
        assert_eq!(err(0, "missing w0 record").to_string(), "missing w0 record");
    }

    #[test]
    fn fields_reject_duplicates_and_report_missing() {
        let mut field: Field<usize> = Field::new("width");
        field.set(2, 1).unwrap();
        assert!(field.set(5, 2).is_err());

        let missing: Field<usize> = Field::new("width");
        let e = missing.take().unwrap_err();
        assert_eq!(e.to_string(), "missing width record");
    }
}
