//! Solving and certifying conjugate correspondences.
//!
//! [`solve_bounded`] enumerates candidate words in length-lexicographic
//! order and returns the first whose images under the two morphisms are
//! conjugate. [`check_solution`] certifies a given candidate,
//! [`lemma1_backward`] converts a two-block exchange witness into a
//! conjugacy certificate, and [`perm_pcp_check`] decides the bounded
//! block-permutation generalization.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use thiserror::Error;

use crate::wordcore::{
    conjugacy_splits, sim_m, Letter, Morphism, MorphismError, PermWitness, Split, Word,
};

/// A solution word together with every factorization witnessing that its
/// two images are conjugate: for each split (u, v), the first image is uv
/// and the second is vu.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateSolution {
    pub w: Word,
    /// All conjugacy splits of the image pair, ordered by |u|.
    pub splits: Vec<Split>,
}

impl fmt::Display for ConjugateSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "w = \"{}\"", self.w)?;
        for split in &self.splits {
            writeln!(f, "  split: {split}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CpcpError {
    #[error("the candidate word is empty")]
    EmptyWord,
    #[error("the pair is not an exchange witness in either orientation")]
    NotAWitness,
    #[error("block counts must be at least 1")]
    ZeroBlockCount,
    #[error("{quantity} {value} exceeds the limit {limit}")]
    LimitExceeded {
        quantity: &'static str,
        value: usize,
        limit: usize,
    },
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// Number of search workers, taken from the `PCPW_WORKERS` environment
/// variable; defaults to 1.
pub fn worker_count() -> usize {
    std::env::var("PCPW_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

/// Finds the length-lexicographically least nonempty word of length at
/// most `max_len` whose images under `h` and `g` are conjugate, together
/// with all of its splits. The morphisms must share their domain.
pub fn solve_bounded(h: &Morphism, g: &Morphism, max_len: usize) -> Option<ConjugateSolution> {
    solve_bounded_with(h, g, max_len, worker_count())
}

/// Like [`solve_bounded`], with the search space partitioned by first
/// letter across `workers` threads. The result is independent of the
/// worker count: the global length-lexicographic minimum is selected.
pub fn solve_bounded_with(
    h: &Morphism,
    g: &Morphism,
    max_len: usize,
    workers: usize,
) -> Option<ConjugateSolution> {
    assert_eq!(h.domain(), g.domain(), "the morphisms must share a domain");
    let letters: Vec<Letter> = h.domain().iter().cloned().collect();
    if letters.is_empty() || max_len == 0 {
        return None;
    }
    let best_len = AtomicUsize::new(usize::MAX);
    let workers = workers.max(1).min(letters.len());
    let candidates: Vec<Word> = if workers == 1 {
        let assigned: Vec<usize> = (0..letters.len()).collect();
        search_assigned(h, g, &letters, &assigned, max_len, &best_len)
            .into_iter()
            .collect()
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|wi| {
                    let assigned: Vec<usize> = (wi..letters.len()).step_by(workers).collect();
                    let (letters, best_len) = (&letters, &best_len);
                    scope.spawn(move || {
                        search_assigned(h, g, letters, &assigned, max_len, best_len)
                    })
                })
                .collect();
            handles
                .into_iter()
                .filter_map(|handle| handle.join().expect("search worker panicked"))
                .collect()
        })
    };
    let w = candidates.into_iter().min_by_key(|w| (w.len(), w.clone()))?;
    let splits = image_splits(h, g, &w);
    Some(ConjugateSolution { w, splits })
}

/// Certifies a candidate word: all conjugacy splits of its image pair, or
/// none if the images are not conjugate.
pub fn check_solution(
    h: &Morphism,
    g: &Morphism,
    w: &Word,
) -> Result<Option<ConjugateSolution>, CpcpError> {
    if w.is_empty() {
        return Err(CpcpError::EmptyWord);
    }
    let hw = h.apply(w)?;
    let gw = g.apply(w)?;
    let splits = conjugacy_splits(&hw, &gw);
    Ok((!splits.is_empty()).then(|| ConjugateSolution { w: w.clone(), splits }))
}

fn image_splits(h: &Morphism, g: &Morphism, w: &Word) -> Vec<Split> {
    let hw = h.apply(w).expect("w is over the domain");
    let gw = g.apply(w).expect("w is over the domain");
    conjugacy_splits(&hw, &gw)
}

/// Searches the subspace of words whose first letter index lies in
/// `assigned`, lengths ascending, lexicographic within a length. Returns
/// the subspace minimum, publishing its length so that sibling workers can
/// prune strictly longer candidates.
fn search_assigned(
    h: &Morphism,
    g: &Morphism,
    letters: &[Letter],
    assigned: &[usize],
    max_len: usize,
    best_len: &AtomicUsize,
) -> Option<Word> {
    for len in 1..=max_len {
        if best_len.load(Ordering::Relaxed) < len {
            return None;
        }
        for &first in assigned {
            let mut suffixes = Odometer::new(len - 1, letters.len());
            while let Some(digits) = suffixes.advance() {
                let mut spelled = Vec::with_capacity(len);
                spelled.push(letters[first].clone());
                spelled.extend(digits.iter().map(|&d| letters[d].clone()));
                let w = Word::from(spelled);
                if !image_splits(h, g, &w).is_empty() {
                    best_len.fetch_min(len, Ordering::Relaxed);
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Counts through all digit vectors of a fixed length over `0..base` in
/// lexicographic order.
struct Odometer {
    digits: Vec<usize>,
    base: usize,
    fresh: bool,
    exhausted: bool,
}

impl Odometer {
    fn new(len: usize, base: usize) -> Self {
        Odometer {
            digits: vec![0; len],
            base,
            fresh: true,
            exhausted: base == 0 && len > 0,
        }
    }

    fn advance(&mut self) -> Option<&[usize]> {
        if self.exhausted {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(&self.digits);
        }
        for i in (0..self.digits.len()).rev() {
            self.digits[i] += 1;
            if self.digits[i] < self.base {
                return Some(&self.digits);
            }
            self.digits[i] = 0;
        }
        self.exhausted = true;
        None
    }
}

/// Which way the exchange-witness equations were matched: `Stated` reads
/// g(xy) = zw' and h(yx) = w'z; `Swapped` exchanges the roles of g and h.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma1Orientation {
    Stated,
    Swapped,
}

/// The output of [`lemma1_backward`]: the solution word xy, a validated
/// conjugacy split of its images, and the orientation that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma1Certificate {
    pub w: Word,
    /// A split with h(w) = uv and g(w) = vu.
    pub split: Split,
    pub orientation: Lemma1Orientation,
}

/// Converts a two-block exchange witness (xy, yx) into a single-word
/// conjugacy certificate for xy.
///
/// The witness condition is that g(xy) = zw' and h(yx) = w'z for some z,
/// w'; the swapped orientation with g and h exchanged is accepted too and
/// recorded in the certificate. Every certificate is validated against the
/// images before it is returned, so a wrongly oriented derivation cannot
/// escape.
pub fn lemma1_backward(
    h: &Morphism,
    g: &Morphism,
    x: &Word,
    y: &Word,
) -> Result<Lemma1Certificate, CpcpError> {
    let xy = x.concat(y);
    let yx = y.concat(x);
    if xy.is_empty() {
        return Err(CpcpError::EmptyWord);
    }
    let h_xy = h.apply(&xy)?;
    let g_xy = g.apply(&xy)?;

    let orientations = [
        (Lemma1Orientation::Stated, g, h),
        (Lemma1Orientation::Swapped, h, g),
    ];
    for (orientation, first, second) in orientations {
        let first_xy = first.apply(&xy)?;
        let second_yx = second.apply(&yx)?;
        let second_x = second.apply(x)?;
        let second_y = second.apply(y)?;
        for witness in conjugacy_splits(&first_xy, &second_yx) {
            let (z, w_prime) = (witness.u, witness.v);
            // Either second(y) is a prefix of w' or the other way round;
            // each case yields a split of second(xy) against first(xy).
            let candidate = if let Some(r) = w_prime.strip_prefix(&second_y) {
                Split {
                    u: r,
                    v: z.concat(&second_y),
                }
            } else if let Some(r) = second_y.strip_prefix(&w_prime) {
                Split {
                    u: second_x.concat(&w_prime),
                    v: r,
                }
            } else {
                continue;
            };
            // Normalize so the split always reads h(xy) = uv, g(xy) = vu.
            let split = match orientation {
                Lemma1Orientation::Stated => candidate,
                Lemma1Orientation::Swapped => Split {
                    u: candidate.v,
                    v: candidate.u,
                },
            };
            if h_xy == split.u.concat(&split.v) && g_xy == split.v.concat(&split.u) {
                return Ok(Lemma1Certificate {
                    w: xy,
                    split,
                    orientation,
                });
            }
        }
    }
    Err(CpcpError::NotAWitness)
}

/// Caps for [`perm_pcp_check`]: the block counts and the candidate word
/// lengths, since the factorization-times-permutation search is factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermLimits {
    pub max_m: usize,
    pub max_n: usize,
    pub max_word_len: usize,
}

impl Default for PermLimits {
    fn default() -> Self {
        PermLimits {
            max_m: 4,
            max_n: 4,
            max_word_len: 12,
        }
    }
}

/// Decides the (m, n) block-permutation correspondence for a candidate
/// pair (u, v): whether u ~_m v and g(u) ~_n h(v), returning both
/// witnesses. Uses the default [`PermLimits`].
pub fn perm_pcp_check(
    g: &Morphism,
    h: &Morphism,
    u: &Word,
    v: &Word,
    m: usize,
    n: usize,
) -> Result<Option<(PermWitness, PermWitness)>, CpcpError> {
    perm_pcp_check_with(g, h, u, v, m, n, PermLimits::default())
}

/// [`perm_pcp_check`] with explicit limits.
pub fn perm_pcp_check_with(
    g: &Morphism,
    h: &Morphism,
    u: &Word,
    v: &Word,
    m: usize,
    n: usize,
    limits: PermLimits,
) -> Result<Option<(PermWitness, PermWitness)>, CpcpError> {
    if m == 0 || n == 0 {
        return Err(CpcpError::ZeroBlockCount);
    }
    let checks = [
        ("block count m", m, limits.max_m),
        ("block count n", n, limits.max_n),
        ("length of u", u.len(), limits.max_word_len),
        ("length of v", v.len(), limits.max_word_len),
    ];
    for (quantity, value, limit) in checks {
        if value > limit {
            return Err(CpcpError::LimitExceeded {
                quantity,
                value,
                limit,
            });
        }
    }
    let Some(pre_image) = sim_m(u, v, m) else {
        return Ok(None);
    };
    let gu = g.apply(u)?;
    let hv = h.apply(v)?;
    let Some(image) = sim_m(&gu, &hv, n) else {
        return Ok(None);
    };
    Ok(Some((pre_image, image)))
}
