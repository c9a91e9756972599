use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::letter::Letter;
use super::word::Word;

/// Errors raised when constructing or applying a [`Morphism`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("letter {0} is outside the morphism domain")]
    OutsideDomain(Letter),
    #[error("image of {letter} uses {used}, which is outside the codomain")]
    OutsideCodomain { letter: Letter, used: Letter },
}

/// A monoid morphism between free monoids, given by the images of the
/// domain letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    domain: BTreeSet<Letter>,
    codomain: BTreeSet<Letter>,
    images: BTreeMap<Letter, Word>,
}

impl Morphism {
    /// Builds a morphism from its image table, inferring the codomain as the
    /// set of letters used by the images.
    pub fn from_images(images: BTreeMap<Letter, Word>) -> Self {
        let codomain = images
            .values()
            .flat_map(|w| w.iter().cloned())
            .collect();
        Morphism {
            domain: images.keys().cloned().collect(),
            codomain,
            images,
        }
    }

    /// Builds a morphism with an explicit codomain, which must cover every
    /// letter used by an image.
    pub fn with_codomain(
        images: BTreeMap<Letter, Word>,
        codomain: BTreeSet<Letter>,
    ) -> Result<Self, MorphismError> {
        for (letter, image) in &images {
            if let Some(used) = image.iter().find(|l| !codomain.contains(l)) {
                return Err(MorphismError::OutsideCodomain {
                    letter: letter.clone(),
                    used: used.clone(),
                });
            }
        }
        Ok(Morphism {
            domain: images.keys().cloned().collect(),
            codomain,
            images,
        })
    }

    /// Convenience constructor from `(spelling, image)` pairs.
    pub fn parse_pairs(pairs: &[(&str, &str)]) -> Self {
        let images = pairs
            .iter()
            .map(|(l, w)| {
                (
                    Letter::from_spelling(l).expect("valid letter spelling"),
                    Word::parse(w).expect("valid word"),
                )
            })
            .collect();
        Morphism::from_images(images)
    }

    pub fn domain(&self) -> &BTreeSet<Letter> {
        &self.domain
    }

    pub fn codomain(&self) -> &BTreeSet<Letter> {
        &self.codomain
    }

    pub fn images(&self) -> &BTreeMap<Letter, Word> {
        &self.images
    }

    pub fn image(&self, letter: &Letter) -> Option<&Word> {
        self.images.get(letter)
    }

    /// Applies the morphism letter by letter.
    pub fn apply(&self, word: &Word) -> Result<Word, MorphismError> {
        let mut out = Vec::new();
        for letter in word {
            let image = self
                .images
                .get(letter)
                .ok_or_else(|| MorphismError::OutsideDomain(letter.clone()))?;
            out.extend(image.iter().cloned());
        }
        Ok(Word::from(out))
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (letter, image)) in self.images.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{letter} -> {image}")?;
        }
        Ok(())
    }
}

/// The morphism over `alphabet` prefixing every letter with `x`:
/// `a -> x a`.
pub fn left_desync(x: &Word, alphabet: &BTreeSet<Letter>) -> Morphism {
    let images = alphabet
        .iter()
        .map(|a| (a.clone(), x.concat(&Word::single(a.clone()))))
        .collect();
    Morphism::from_images(images)
}

/// The morphism over `alphabet` suffixing every letter with `x`:
/// `a -> a x`.
pub fn right_desync(x: &Word, alphabet: &BTreeSet<Letter>) -> Morphism {
    let images = alphabet
        .iter()
        .map(|a| (a.clone(), Word::single(a.clone()).concat(x)))
        .collect();
    Morphism::from_images(images)
}
