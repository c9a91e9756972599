//! Bi-infinite correspondence files: pair lists and candidate words.
//!
//! An instance lists its pairs in index order, sides separated by `|`:
//!
//! ```text
//! n: 2
//! pair: a b | b a
//! pair: b | a
//! ```
//!
//! Either side of a pair may be empty. A candidate describes a bi-infinite
//! word by its two periods and an optional finite center:
//!
//! ```text
//! left: a b
//! center: a
//! right: b a
//! ```

use crate::wordcore::Word;
use crate::zpcp::{BiInfiniteWord, ZpcpInstance};

use super::{content_lines, err, parse_word, record, split_key, Field, ParseError};

pub fn parse_zpcp_instance(text: &str) -> Result<ZpcpInstance, ParseError> {
    let mut n = Field::new("n");
    let mut pairs: Vec<(Word, Word)> = Vec::new();

    for (line_no, line) in content_lines(text) {
        let (key, value) = split_key(line_no, line)?;
        match key {
            "n" => n.set(
                line_no,
                value
                    .parse::<usize>()
                    .map_err(|_| err(line_no, format!("n must be a number, found {value:?}")))?,
            )?,
            "pair" => {
                let (left, right) = value
                    .split_once('|')
                    .ok_or_else(|| err(line_no, format!("expected left | right, found {value:?}")))?;
                pairs.push((parse_word(line_no, left)?, parse_word(line_no, right)?));
            }
            other => return Err(err(line_no, format!("unknown record {other:?}"))),
        }
    }

    let n = n.take()?;
    if n != pairs.len() {
        return Err(err(0, format!("n is {n} but {} pairs are listed", pairs.len())));
    }
    ZpcpInstance::from_pairs(pairs).map_err(|e| err(0, e.to_string()))
}

pub fn write_zpcp_instance(instance: &ZpcpInstance) -> String {
    let mut out = record("n", &instance.n.to_string());
    for (u, v) in instance.pairs() {
        out.push_str(&record("pair", format!("{u} | {v}").trim()));
    }
    out
}

pub fn parse_candidate(text: &str) -> Result<BiInfiniteWord, ParseError> {
    let mut left = Field::new("left");
    let mut center = Field::new("center");
    let mut right = Field::new("right");

    for (line_no, line) in content_lines(text) {
        let (key, value) = split_key(line_no, line)?;
        match key {
            "left" => left.set(line_no, parse_word(line_no, value)?)?,
            "center" => center.set(line_no, parse_word(line_no, value)?)?,
            "right" => right.set(line_no, parse_word(line_no, value)?)?,
            other => return Err(err(line_no, format!("unknown record {other:?}"))),
        }
    }

    BiInfiniteWord::new(
        left.take()?,
        center.optional().unwrap_or_default(),
        right.take()?,
    )
    .map_err(|e| err(0, e.to_string()))
}

pub fn write_candidate(word: &BiInfiniteWord) -> String {
    let mut out = record("left", &word.left_period().to_string());
    out.push_str(&record("center", &word.center().to_string()));
    out.push_str(&record("right", &word.right_period().to_string()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_round_trip() {
        let text = "n: 2\npair: a b | b a\npair: b | a\n";
        let instance = parse_zpcp_instance(text).unwrap();
        assert_eq!(instance.n, 2);
        assert_eq!(
            instance.pairs(),
            vec![
                (Word::parse("a b").unwrap(), Word::parse("b a").unwrap()),
                (Word::parse("b").unwrap(), Word::parse("a").unwrap()),
            ]
        );
        assert_eq!(write_zpcp_instance(&instance), text);

        let empty_side = parse_zpcp_instance("n: 1\npair: | a\n").unwrap();
        assert_eq!(empty_side.pairs(), vec![(Word::new(), Word::parse("a").unwrap())]);
        assert_eq!(write_zpcp_instance(&empty_side), "n: 1\npair: | a\n");
    }

    #[test]
    fn instance_errors() {
        assert_eq!(
            parse_zpcp_instance("n: 3\npair: a | b\n").unwrap_err().to_string(),
            "n is 3 but 1 pairs are listed"
        );
        assert_eq!(
            parse_zpcp_instance("pair: a | b\n").unwrap_err().to_string(),
            "missing n record"
        );
        assert_eq!(
            parse_zpcp_instance("n: 2\npair: a b\npair: b | a\n")
                .unwrap_err()
                .to_string(),
            "line 2: expected left | right, found \"a b\""
        );
        assert!(parse_zpcp_instance("n: 0\n").is_err());
    }

    #[test]
    fn candidates_round_trip() {
        let text = "left: a b\ncenter: a\nright: b a\n";
        let word = parse_candidate(text).unwrap();
        assert_eq!(word.left_period(), &Word::parse("a b").unwrap());
        assert_eq!(word.center(), &Word::parse("a").unwrap());
        assert_eq!(word.right_period(), &Word::parse("b a").unwrap());
        assert_eq!(write_candidate(&word), text);

        let no_center = parse_candidate("left: a\nright: b\n").unwrap();
        assert!(no_center.center().is_empty());
        assert_eq!(write_candidate(&no_center), "left: a\ncenter:\nright: b\n");
        assert_eq!(parse_candidate(&write_candidate(&no_center)).unwrap(), no_center);
    }

    #[test]
    fn candidate_errors() {
        assert_eq!(
            parse_candidate("center: a\nright: b\n").unwrap_err().to_string(),
            "missing left record"
        );
        let empty_period = parse_candidate("left:\nright: b\n").unwrap_err();
        assert!(empty_period.to_string().contains("period"), "{empty_period}");
    }
}
