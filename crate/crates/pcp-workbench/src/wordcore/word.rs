use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use super::letter::{Letter, LetterError, Subscript};

/// A finite word: a sequence of [`Letter`]s.
///
/// Serializes as whitespace-separated letter spellings; the empty word
/// serializes as the empty string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    /// Parses whitespace-separated letter spellings.
    pub fn parse(text: &str) -> Result<Self, LetterError> {
        text.split_whitespace()
            .map(Letter::from_spelling)
            .collect()
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Word(letters)
    }

    pub fn sub(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn repeated(&self, times: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * times);
        for _ in 0..times {
            letters.extend(self.0.iter().cloned());
        }
        Word(letters)
    }

    /// The rotation moving the first `k` letters to the end.
    pub fn rotated_left(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend(self.0[..k].iter().cloned());
        Word(letters)
    }

    /// The word with every letter's overline flag flipped.
    pub fn toggled_overline(&self) -> Word {
        Word(self.0.iter().map(Letter::toggled).collect())
    }

    /// The word with the given subscript on every letter; fails on letters
    /// that do not take subscripts.
    pub fn with_subscript(&self, subscript: Subscript) -> Result<Word, LetterError> {
        self.0.iter().map(|l| l.with_subscript(subscript)).collect()
    }

    /// The word with all subscripts removed.
    pub fn without_subscripts(&self) -> Word {
        Word(self.0.iter().map(Letter::without_subscript).collect())
    }

    /// Position of the first occurrence of `factor` at or after `from`.
    pub fn find_factor(&self, factor: &Word, from: usize) -> Option<usize> {
        if factor.is_empty() {
            return (from <= self.len()).then_some(from);
        }
        if factor.len() > self.len() {
            return None;
        }
        (from..=self.len() - factor.len()).find(|&i| self.0[i..i + factor.len()] == factor.0[..])
    }

    pub fn contains_factor(&self, factor: &Word) -> bool {
        self.find_factor(factor, 0).is_some()
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.len() >= prefix.len() && self.0[..prefix.len()] == prefix.0[..]
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.len() >= suffix.len() && self.0[self.len() - suffix.len()..] == suffix.0[..]
    }

    /// Strips `prefix` from the front, if present.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.starts_with(prefix).then(|| self.sub(prefix.len(), self.len()))
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = LetterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["", "a", "a b a b", "~a_2 t3 # I", "L q0 a R"] {
            assert_eq!(w(text).to_string(), text);
        }
    }

    #[test]
    fn factor_search() {
        let word = w("a b a b");
        assert_eq!(word.find_factor(&w("a b"), 0), Some(0));
        assert_eq!(word.find_factor(&w("a b"), 1), Some(2));
        assert_eq!(word.find_factor(&w("b b"), 0), None);
        assert!(word.contains_factor(&w("")));
        assert_eq!(w("").find_factor(&w("a"), 0), None);
    }

    #[test]
    fn rotations() {
        let word = w("a b c0 d0");
        assert_eq!(word.rotated_left(0), word);
        assert_eq!(word.rotated_left(1), w("b c0 d0 a"));
        assert_eq!(word.rotated_left(4), word);
        assert_eq!(w("").rotated_left(3), w(""));
    }

    #[test]
    fn subscripts_and_overlines() {
        let word = w("L a b R");
        assert_eq!(
            word.with_subscript(Subscript::One).unwrap(),
            w("L_1 a_1 b_1 R_1")
        );
        assert_eq!(w("L_1 a_1").without_subscripts(), w("L a"));
        assert_eq!(w("a #").toggled_overline(), w("~a ~#"));
        assert!(w("a #").with_subscript(Subscript::One).is_err());
    }
}
