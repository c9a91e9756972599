//! Shared helpers and independent oracles for the integration suites.
//!
//! The oracles deliberately avoid the library's own primitives so that the
//! suites compare two unrelated implementations.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pcp_workbench::wordcore::{Letter, Morphism, Split, Word};

pub fn letter(s: &str) -> Letter {
    s.parse().expect("test letters are valid")
}

pub fn letters(ss: &[&str]) -> Vec<Letter> {
    ss.iter().map(|s| letter(s)).collect()
}

pub fn word(s: &str) -> Word {
    Word::parse(s).expect("test words are valid")
}

pub fn split(u: &str, v: &str) -> Split {
    Split { u: word(u), v: word(v) }
}

/// Factor-based conjugacy: equal lengths and `x` occurs inside `y glued to
/// itself`.
pub fn conjugate_oracle(x: &Word, y: &Word) -> bool {
    if x.len() != y.len() {
        return false;
    }
    if x.is_empty() {
        return true;
    }
    let doubled: Vec<&Letter> = y.iter().chain(y.iter()).collect();
    let pattern: Vec<&Letter> = x.iter().collect();
    doubled.windows(pattern.len()).any(|w| w == pattern)
}

/// All words over `alphabet` of length at most `max_len`, in
/// length-lexicographic order, starting with the empty word.
pub fn words_over(alphabet: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::new()];
    let mut layer = vec![Word::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in alphabet {
                let mut grown = w.clone();
                grown.push(l.clone());
                next.push(grown);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut impl Rng, alphabet: &[Letter], len: usize) -> Word {
    (0..len)
        .map(|_| alphabet[rng.random_range(0..alphabet.len())].clone())
        .collect()
}

/// A morphism with an independently random image for each domain letter,
/// of length between `min_image` and `max_image`.
pub fn random_morphism(
    rng: &mut impl Rng,
    domain: &[Letter],
    targets: &[Letter],
    min_image: usize,
    max_image: usize,
) -> Morphism {
    let images: BTreeMap<Letter, Word> = domain
        .iter()
        .map(|l| {
            let len = rng.random_range(min_image..=max_image);
            (l.clone(), random_word(rng, targets, len))
        })
        .collect();
    Morphism::from_images(images)
}

/// Every way of assigning one of `images` to each of `domain_size` letters.
pub fn image_assignments<'a>(
    domain_size: usize,
    images: &'a [Word],
) -> impl Iterator<Item = Vec<&'a Word>> + 'a {
    let total = images.len().pow(domain_size as u32);
    (0..total).map(move |mut code| {
        (0..domain_size)
            .map(|_| {
                let image = &images[code % images.len()];
                code /= images.len();
                image
            })
            .collect()
    })
}

/// Builds the morphism `domain[i] -> images[i]`.
pub fn morphism_from(domain: &[Letter], images: &[&Word]) -> Morphism {
    Morphism::from_images(
        domain
            .iter()
            .cloned()
            .zip(images.iter().map(|w| (*w).clone()))
            .collect(),
    )
}
