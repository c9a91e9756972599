use std::fmt;

use super::word::Word;

/// A witness that two words are conjugate: `x = u v` and `y = v u`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Split {
    pub u: Word,
    pub v: Word,
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u = \"{}\", v = \"{}\"", self.u, self.v)
    }
}

/// Whether `x` and `y` are conjugate, returning the witness with the least
/// `|u|` if so.
pub fn is_conjugate(x: &Word, y: &Word) -> Option<Split> {
    if x.len() != y.len() {
        return None;
    }
    (0..=x.len()).map(|k| split_at(x, k)).find(|s| matches(s, y))
}

/// All conjugacy witnesses of `(x, y)`, ordered by `|u|`.
pub fn conjugacy_splits(x: &Word, y: &Word) -> Vec<Split> {
    if x.len() != y.len() {
        return Vec::new();
    }
    (0..=x.len())
        .map(|k| split_at(x, k))
        .filter(|s| matches(s, y))
        .collect()
}

fn split_at(x: &Word, k: usize) -> Split {
    Split {
        u: x.sub(0, k),
        v: x.sub(k, x.len()),
    }
}

fn matches(split: &Split, y: &Word) -> bool {
    y.starts_with(&split.v) && y.ends_with(&split.u)
}

/// The primitive root of `w`: the shortest `z` with `w = z^k`.
pub fn primitive_root(w: &Word) -> Word {
    let n = w.len();
    for d in 1..=n / 2 {
        if n.is_multiple_of(d) && w.sub(0, d).repeated(n / d) == *w {
            return w.sub(0, d);
        }
    }
    w.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn abab_baba_minimal_split() {
        let split = is_conjugate(&w("a b a b"), &w("b a b a")).unwrap();
        assert_eq!(split, Split { u: w("a"), v: w("b a b") });
    }

    #[test]
    fn abab_baba_has_exactly_two_splits() {
        let splits = conjugacy_splits(&w("a b a b"), &w("b a b a"));
        assert_eq!(
            splits,
            vec![
                Split { u: w("a"), v: w("b a b") },
                Split { u: w("a b a"), v: w("b") },
            ]
        );
    }

    #[test]
    fn non_conjugates() {
        assert_eq!(is_conjugate(&w("a"), &w("b")), None);
        assert_eq!(is_conjugate(&w("a a"), &w("a")), None);
        assert_eq!(is_conjugate(&w("a b a"), &w("b a b")), None);
    }

    #[test]
    fn empty_and_equal_words() {
        assert_eq!(
            is_conjugate(&w(""), &w("")),
            Some(Split { u: w(""), v: w("") })
        );
        assert_eq!(
            is_conjugate(&w("a b"), &w("a b")),
            Some(Split { u: w(""), v: w("a b") })
        );
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(&w("a b a b")), w("a b"));
        assert_eq!(primitive_root(&w("a a a")), w("a"));
        assert_eq!(primitive_root(&w("a b a")), w("a b a"));
        assert_eq!(primitive_root(&w("")), w(""));
    }

    /// Independent oracle: x and y are conjugate iff |x| = |y| and x occurs
    /// as a factor of y y.
    fn factor_oracle(x: &Word, y: &Word) -> bool {
        x.len() == y.len() && y.concat(y).contains_factor(x)
    }

    #[test]
    fn agrees_with_factor_oracle_on_small_words() {
        let letters = [w("a"), w("b")];
        let mut words = vec![w("")];
        let mut last = vec![w("")];
        for _ in 0..5 {
            let mut next = Vec::new();
            for word in &last {
                for l in &letters {
                    next.push(word.concat(l));
                }
            }
            words.extend(next.iter().cloned());
            last = next;
        }
        for x in &words {
            for y in &words {
                assert_eq!(
                    is_conjugate(x, y).is_some(),
                    factor_oracle(x, y),
                    "x = {x}, y = {y}"
                );
            }
        }
    }
}
