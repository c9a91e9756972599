//! The correspondence problem over bi-infinite words.
//!
//! Candidates are ultimately periodic bi-infinite words given as a
//! (left period, center, right period) triple. The module decides
//! equality modulo shift exactly for purely periodic words, semi-verifies
//! the general case through bounded windows, searches for periodic
//! solutions, and bridges conjugate solutions into accepted candidates.

use std::fmt;

use thiserror::Error;

use crate::wordcore::{primitive_root, Letter, Morphism, MorphismError, Split, Word};

/// An ultimately periodic bi-infinite word: the left period repeats
/// leftward, then the center, then the right period repeats rightward.
/// Position 0 is the first letter of the center, or of the right period
/// when the center is empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiInfiniteWord {
    left_period: Word,
    center: Word,
    right_period: Word,
}

/// A bi-infinite word over an index alphabet, naming one pair of the
/// instance per position.
pub type IndexSequence = BiInfiniteWord;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ZpcpError {
    #[error("a period of a bi-infinite word must be nonempty")]
    EmptyPeriod,
    #[error("a period maps to the empty word, so the image is not bi-infinite")]
    DegeneratePeriod,
    #[error("the word is not purely periodic; use windowed verification instead")]
    NotPurelyPeriodic,
    #[error("the split does not certify the word")]
    InvalidSplit,
    #[error("an instance needs at least one pair")]
    NoPairs,
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

impl BiInfiniteWord {
    /// Builds the word; both periods must be nonempty.
    pub fn new(left_period: Word, center: Word, right_period: Word) -> Result<Self, ZpcpError> {
        if left_period.is_empty() || right_period.is_empty() {
            return Err(ZpcpError::EmptyPeriod);
        }
        Ok(BiInfiniteWord {
            left_period,
            center,
            right_period,
        })
    }

    /// The purely periodic word with period `z` aligned at position 0.
    pub fn periodic(z: Word) -> Result<Self, ZpcpError> {
        BiInfiniteWord::new(z.clone(), Word::new(), z)
    }

    pub fn left_period(&self) -> &Word {
        &self.left_period
    }

    pub fn center(&self) -> &Word {
        &self.center
    }

    pub fn right_period(&self) -> &Word {
        &self.right_period
    }

    /// The letter at any integer position.
    pub fn letter_at(&self, i: i64) -> &Letter {
        let center_len = self.center.len() as i64;
        if i >= center_len {
            let k = (i - center_len) as usize % self.right_period.len();
            &self.right_period[k]
        } else if i >= 0 {
            &self.center[i as usize]
        } else {
            let k = (-i - 1) as usize % self.left_period.len();
            &self.left_period[self.left_period.len() - 1 - k]
        }
    }

    /// When this word is purely periodic, its primitive period aligned at
    /// position 0; none otherwise.
    ///
    /// The word is periodic with period n only if n is a common multiple
    /// of both primitive tail periods, and positions far inside either
    /// tail repeat automatically, so checking one window around the
    /// center decides the question exactly.
    pub fn periodic_root(&self) -> Option<Word> {
        let left = primitive_root(&self.left_period);
        let right = primitive_root(&self.right_period);
        let n = lcm(left.len(), right.len()) as i64;
        for i in -n..self.center.len() as i64 {
            if self.letter_at(i) != self.letter_at(i + n) {
                return None;
            }
        }
        let root: Word = (0..n).map(|i| self.letter_at(i).clone()).collect();
        Some(primitive_root(&root))
    }
}

impl fmt::Display for BiInfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "^({}) | {} | ({})^",
            self.left_period, self.center, self.right_period
        )
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A correspondence instance over bi-infinite words: pair k of the list
/// is addressed by the index letter spelled k+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZpcpInstance {
    pub h: Morphism,
    pub g: Morphism,
    pub n: usize,
}

impl ZpcpInstance {
    /// Builds an instance from the pair list (u_k, v_k); h maps the k-th
    /// index letter to u_k and g maps it to v_k.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Word, Word)>) -> Result<Self, ZpcpError> {
        let pairs: Vec<(Word, Word)> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Err(ZpcpError::NoPairs);
        }
        let n = pairs.len();
        let h_images = pairs
            .iter()
            .enumerate()
            .map(|(k, (u, _))| (Self::index_letter(k + 1), u.clone()))
            .collect();
        let g_images = pairs
            .into_iter()
            .enumerate()
            .map(|(k, (_, v))| (Self::index_letter(k + 1), v))
            .collect();
        Ok(ZpcpInstance {
            h: Morphism::from_images(h_images),
            g: Morphism::from_images(g_images),
            n,
        })
    }

    /// The letter naming pair `k` (1-based).
    pub fn index_letter(k: usize) -> Letter {
        k.to_string().parse().expect("digits are a valid spelling")
    }

    /// The pair list in index order.
    pub fn pairs(&self) -> Vec<(Word, Word)> {
        (1..=self.n)
            .map(|k| {
                let letter = Self::index_letter(k);
                (
                    self.h.image(&letter).cloned().unwrap_or_default(),
                    self.g.image(&letter).cloned().unwrap_or_default(),
                )
            })
            .collect()
    }
}

/// Maps a bi-infinite word through a morphism component-wise. Fails if a
/// period maps to the empty word, since the image would not be
/// bi-infinite.
pub fn image_biword(m: &Morphism, seq: &BiInfiniteWord) -> Result<BiInfiniteWord, ZpcpError> {
    let left = m.apply(seq.left_period())?;
    let center = m.apply(seq.center())?;
    let right = m.apply(seq.right_period())?;
    if left.is_empty() || right.is_empty() {
        return Err(ZpcpError::DegeneratePeriod);
    }
    BiInfiniteWord::new(left, center, right)
}

/// Whether two purely periodic bi-infinite words are equal modulo shift:
/// the minimal s >= 0 with q(m) = p(m + s) for every position m, if any.
/// Words that are not purely periodic are rejected; use [`verify_window`]
/// for those.
pub fn eq_mod_shift_periodic(
    p: &BiInfiniteWord,
    q: &BiInfiniteWord,
) -> Result<Option<i64>, ZpcpError> {
    let zp = p.periodic_root().ok_or(ZpcpError::NotPurelyPeriodic)?;
    let zq = q.periodic_root().ok_or(ZpcpError::NotPurelyPeriodic)?;
    if zp.len() != zq.len() {
        return Ok(None);
    }
    let n = zp.len();
    'shift: for s in 0..n {
        for m in 0..n {
            if zq[m] != zp[(m + s) % n] {
                continue 'shift;
            }
        }
        return Ok(Some(s as i64));
    }
    Ok(None)
}

/// The outcome of a windowed comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowOutcome {
    Ok,
    /// The first radius m at which the images disagree.
    Mismatch { m: usize },
}

/// Verifies a candidate against a shift on a finite window: for
/// m = 0..=radius, the g-image at positions m and -m must equal the
/// h-image at m + s and -m + s. Reports the first failing radius.
pub fn verify_window(
    h: &Morphism,
    g: &Morphism,
    seq: &BiInfiniteWord,
    s: i64,
    radius: usize,
) -> Result<WindowOutcome, ZpcpError> {
    let u = image_biword(h, seq)?;
    let v = image_biword(g, seq)?;
    for m in 0..=radius as i64 {
        for pos in [m, -m] {
            if v.letter_at(pos) != u.letter_at(pos + s) {
                return Ok(WindowOutcome::Mismatch { m: m as usize });
            }
        }
    }
    Ok(WindowOutcome::Ok)
}

/// The verdict of [`test_procedure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Some window verified cleanly; carries the witnessing shift.
    Accepted { shift: i64 },
    /// Never produced by [`test_procedure`]: finitely many finite windows
    /// cannot refute every shift.
    Rejected,
    /// All rounds exhausted without a clean window.
    Inconclusive { rounds: usize, window: usize },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted { shift } => write!(f, "accepted with shift {shift}"),
            Verdict::Rejected => write!(f, "rejected"),
            Verdict::Inconclusive { rounds, window } => {
                write!(f, "inconclusive after {rounds} rounds at window {window}")
            }
        }
    }
}

/// The shift schedule 0, 1, -1, 2, -2, ...: negate after an odd round,
/// step outward after an even one, with the repeated initial zero
/// deduplicated. The first 2k+1 entries cover exactly 0, ±1, ..., ±k.
pub fn shift_schedule(rounds: usize) -> Vec<i64> {
    (0..rounds)
        .map(|r| {
            if r % 2 == 1 {
                r.div_ceil(2) as i64
            } else {
                -((r / 2) as i64)
            }
        })
        .collect()
}

/// Runs windowed verification over the shift schedule: accepted on the
/// first clean window, inconclusive when the rounds run out. Never
/// rejects, since bounded windows cannot prove the absence of a shift.
pub fn test_procedure(
    h: &Morphism,
    g: &Morphism,
    seq: &BiInfiniteWord,
    max_rounds: usize,
    radius: usize,
) -> Result<Verdict, ZpcpError> {
    for s in shift_schedule(max_rounds) {
        if verify_window(h, g, seq, s, radius)? == WindowOutcome::Ok {
            return Ok(Verdict::Accepted { shift: s });
        }
    }
    Ok(Verdict::Inconclusive {
        rounds: max_rounds,
        window: radius,
    })
}

/// The first n pairs of the outward-spiral coding of a sequence:
/// (seq(0), seq(0)), (seq(1), seq(-1)), ..., (seq(n-1), seq(-(n-1))).
pub fn pair_code_prefix(seq: &BiInfiniteWord, n: usize) -> Vec<(Letter, Letter)> {
    (0..n as i64)
        .map(|k| (seq.letter_at(k).clone(), seq.letter_at(-k).clone()))
        .collect()
}

/// Searches for the length-lexicographically least index word z whose
/// purely periodic candidate has shift-equal images, confirming the exact
/// decision with a window of ten image periods. Candidates erased to an
/// empty image by either morphism are skipped.
pub fn find_periodic_solution(
    h: &Morphism,
    g: &Morphism,
    max_len: usize,
) -> Result<Option<(Word, i64)>, ZpcpError> {
    let letters: Vec<Letter> = h.domain().iter().cloned().collect();
    if letters.is_empty() {
        return Ok(None);
    }
    for len in 1..=max_len {
        let mut digits = vec![0usize; len];
        loop {
            let z: Word = digits.iter().map(|&d| letters[d].clone()).collect();
            let hz = h.apply(&z)?;
            let gz = g.apply(&z)?;
            if !hz.is_empty() && !gz.is_empty() {
                let p = BiInfiniteWord::periodic(hz.clone())?;
                let q = BiInfiniteWord::periodic(gz.clone())?;
                if let Some(s) = eq_mod_shift_periodic(&p, &q)? {
                    let seq = BiInfiniteWord::periodic(z.clone())?;
                    let radius = 10 * hz.len().max(gz.len());
                    if verify_window(h, g, &seq, s, radius)? == WindowOutcome::Ok {
                        return Ok(Some((z, s)));
                    }
                }
            }
            if !increment(&mut digits, letters.len()) {
                break;
            }
        }
    }
    Ok(None)
}

fn increment(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Turns a certified conjugate solution into a bi-infinite candidate: the
/// periodic sequence over w with shift |u|. With h(w) = uv and g(w) = vu,
/// the g-image at any position m equals the h-image at m + |u|, so the
/// candidate passes windowed verification at that shift.
pub fn cpcp_bridge(
    h: &Morphism,
    g: &Morphism,
    w: &Word,
    split: &Split,
) -> Result<(IndexSequence, i64), ZpcpError> {
    if w.is_empty() {
        return Err(ZpcpError::InvalidSplit);
    }
    let hw = h.apply(w)?;
    let gw = g.apply(w)?;
    if hw != split.u.concat(&split.v) || gw != split.v.concat(&split.u) {
        return Err(ZpcpError::InvalidSplit);
    }
    Ok((BiInfiniteWord::periodic(w.clone())?, split.u.len() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpcp::check_solution;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    fn bi(left: &str, center: &str, right: &str) -> BiInfiniteWord {
        BiInfiniteWord::new(w(left), w(center), w(right)).unwrap()
    }

    fn pairs(list: &[(&str, &str)]) -> ZpcpInstance {
        ZpcpInstance::from_pairs(list.iter().map(|(u, v)| (w(u), w(v)))).unwrap()
    }

    #[test]
    fn indexing_the_triple() {
        let word = bi("a", "", "b");
        assert_eq!(word.letter_at(0).to_string(), "b");
        assert_eq!(word.letter_at(-1).to_string(), "a");

        let word = bi("a b", "", "a b");
        assert_eq!(word.letter_at(-2).to_string(), "a");
        assert_eq!(word.letter_at(-1).to_string(), "b");

        let word = bi("a", "c", "b");
        assert_eq!(word.letter_at(0).to_string(), "c");
        assert_eq!(word.letter_at(1).to_string(), "b");
    }

    #[test]
    fn indexing_agrees_with_unrolling() {
        for (l, c, r) in [("a b", "c", "d e f"), ("a", "", "b a"), ("a b a", "b b", "a")] {
            let word = bi(l, c, r);
            let (l, c, r) = (w(l), w(c), w(r));
            let radius = 100usize;
            let mut unrolled: Vec<Letter> = Vec::new();
            while unrolled.len() < radius {
                let mut copy: Vec<Letter> = l.iter().cloned().collect();
                copy.extend(unrolled);
                unrolled = copy;
            }
            let offset = unrolled.len();
            unrolled.extend(c.iter().cloned());
            while unrolled.len() < offset + c.len() + radius {
                unrolled.extend(r.iter().cloned());
            }
            for i in -(radius as i64)..(radius as i64) {
                let k = (i + offset as i64) as usize;
                assert_eq!(word.letter_at(i), &unrolled[k], "position {i}");
            }
        }
    }

    #[test]
    fn empty_periods_are_rejected() {
        assert_eq!(
            BiInfiniteWord::new(w(""), w(""), w("a")),
            Err(ZpcpError::EmptyPeriod)
        );
        assert_eq!(
            BiInfiniteWord::new(w("a"), w("b"), w("")),
            Err(ZpcpError::EmptyPeriod)
        );
    }

    #[test]
    fn images_of_candidates() {
        let h = Morphism::parse_pairs(&[("1", "a b")]);
        let image = image_biword(&h, &bi("1", "", "1")).unwrap();
        assert_eq!(image, bi("a b", "", "a b"));

        let h = Morphism::parse_pairs(&[("1", "a"), ("2", "b")]);
        let image = image_biword(&h, &bi("1", "2", "1")).unwrap();
        assert_eq!(image, bi("a", "b", "a"));

        // (aa)^Z equals a^Z as a bi-infinite word.
        let g = Morphism::parse_pairs(&[("1", "a a")]);
        let doubled = image_biword(&g, &bi("1", "", "1")).unwrap();
        let plain = bi("a", "", "a");
        for i in -20..20 {
            assert_eq!(doubled.letter_at(i), plain.letter_at(i));
        }
        assert_eq!(eq_mod_shift_periodic(&doubled, &plain).unwrap(), Some(0));

        let erasing = Morphism::parse_pairs(&[("1", "")]);
        assert_eq!(
            image_biword(&erasing, &bi("1", "", "1")),
            Err(ZpcpError::DegeneratePeriod)
        );
    }

    #[test]
    fn shift_equality_of_periodic_words() {
        assert_eq!(
            eq_mod_shift_periodic(&bi("a b", "", "a b"), &bi("b a", "", "b a")).unwrap(),
            Some(1)
        );
        assert_eq!(
            eq_mod_shift_periodic(&bi("a b", "", "a b"), &bi("a b", "", "a b")).unwrap(),
            Some(0)
        );
        assert_eq!(
            eq_mod_shift_periodic(&bi("a", "", "a"), &bi("b", "", "b")).unwrap(),
            None
        );
        assert_eq!(
            eq_mod_shift_periodic(&bi("a", "b", "a"), &bi("a", "", "a")),
            Err(ZpcpError::NotPurelyPeriodic)
        );
    }

    #[test]
    fn periodic_roots() {
        assert_eq!(bi("a b", "", "a b").periodic_root(), Some(w("a b")));
        assert_eq!(bi("a a", "", "a").periodic_root(), Some(w("a")));
        // Periodic despite the center: ...ab ab | a | ba ba... is (ab)^Z.
        assert_eq!(bi("a b", "a", "b a").periodic_root(), Some(w("a b")));
        assert_eq!(bi("a", "b", "a").periodic_root(), None);
        assert_eq!(bi("a b", "", "b a").periodic_root(), None);
    }

    #[test]
    fn window_verification() {
        let inst = pairs(&[("a b", "b a")]);
        let seq = bi("1", "", "1");
        assert_eq!(
            verify_window(&inst.h, &inst.g, &seq, 1, 50).unwrap(),
            WindowOutcome::Ok
        );
        assert_eq!(
            verify_window(&inst.h, &inst.g, &seq, 0, 50).unwrap(),
            WindowOutcome::Mismatch { m: 0 }
        );

        let inst = pairs(&[("a", "b")]);
        for s in [-2, 0, 3] {
            assert_eq!(
                verify_window(&inst.h, &inst.g, &seq, s, 0).unwrap(),
                WindowOutcome::Mismatch { m: 0 }
            );
        }
    }

    #[test]
    fn test_procedure_schedule_and_verdicts() {
        assert_eq!(shift_schedule(7), vec![0, 1, -1, 2, -2, 3, -3]);
        for k in 0..5usize {
            let mut covered: Vec<i64> = shift_schedule(2 * k + 1);
            covered.sort();
            let expected: Vec<i64> = (-(k as i64)..=k as i64).collect();
            assert_eq!(covered, expected);
        }

        let seq = bi("1", "", "1");
        let swap = pairs(&[("a b", "b a")]);
        assert_eq!(
            test_procedure(&swap.h, &swap.g, &seq, 5, 50).unwrap(),
            Verdict::Accepted { shift: 1 }
        );
        let same = pairs(&[("a", "a")]);
        assert_eq!(
            test_procedure(&same.h, &same.g, &seq, 1, 50).unwrap(),
            Verdict::Accepted { shift: 0 }
        );
        let disjoint = pairs(&[("a", "b")]);
        assert_eq!(
            test_procedure(&disjoint.h, &disjoint.g, &seq, 3, 50).unwrap(),
            Verdict::Inconclusive { rounds: 3, window: 50 }
        );
    }

    #[test]
    fn pair_coding() {
        let constant = bi("1", "", "1");
        let coded = pair_code_prefix(&constant, 3);
        let one = ZpcpInstance::index_letter(1);
        assert_eq!(coded, vec![(one.clone(), one.clone()); 3]);

        let centered = bi("1", "2", "3");
        let spelled: Vec<(String, String)> = pair_code_prefix(&centered, 2)
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(spelled, vec![("2".into(), "2".into()), ("3".into(), "1".into())]);

        let alternating = bi("1 2", "", "1 2");
        let spelled: Vec<(String, String)> = pair_code_prefix(&alternating, 2)
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(spelled, vec![("1".into(), "1".into()), ("2".into(), "2".into())]);
    }

    #[test]
    fn periodic_solution_search() {
        let swap = pairs(&[("a b", "b a")]);
        assert_eq!(
            find_periodic_solution(&swap.h, &swap.g, 3).unwrap(),
            Some((w("1"), 1))
        );

        let stretch = pairs(&[("a", "a a")]);
        assert_eq!(
            find_periodic_solution(&stretch.h, &stretch.g, 3).unwrap(),
            Some((w("1"), 0))
        );

        let disjoint = pairs(&[("a", "b")]);
        assert_eq!(find_periodic_solution(&disjoint.h, &disjoint.g, 4).unwrap(), None);
    }

    #[test]
    fn bridging_conjugate_solutions() {
        let h = Morphism::parse_pairs(&[("a", "a b a"), ("b", "b")]);
        let g = Morphism::parse_pairs(&[("a", "b a b"), ("b", "a")]);
        let solution = check_solution(&h, &g, &w("a b")).unwrap().unwrap();

        let (seq, shift) = cpcp_bridge(&h, &g, &solution.w, &solution.splits[0]).unwrap();
        assert_eq!(shift, 1);
        assert_eq!(verify_window(&h, &g, &seq, shift, 50).unwrap(), WindowOutcome::Ok);

        let (seq, shift) = cpcp_bridge(&h, &g, &solution.w, &solution.splits[1]).unwrap();
        assert_eq!(shift, 3);
        assert_eq!(verify_window(&h, &g, &seq, shift, 50).unwrap(), WindowOutcome::Ok);

        // Identity instance: the shift is a full period, same as zero.
        let id = Morphism::parse_pairs(&[("a", "a")]);
        let solution = check_solution(&id, &id, &w("a")).unwrap().unwrap();
        let full = solution.splits.iter().find(|s| s.v.is_empty()).unwrap();
        let (seq, shift) = cpcp_bridge(&id, &id, &solution.w, full).unwrap();
        assert_eq!(shift, 1);
        assert_eq!(verify_window(&id, &id, &seq, shift, 20).unwrap(), WindowOutcome::Ok);

        let bogus = Split { u: w("a"), v: w("a") };
        assert_eq!(
            cpcp_bridge(&h, &g, &w("a b"), &bogus),
            Err(ZpcpError::InvalidSplit)
        );
    }

    #[test]
    fn instances_from_pairs() {
        let inst = pairs(&[("a b", "b a"), ("a", "a")]);
        assert_eq!(inst.n, 2);
        assert_eq!(inst.pairs(), vec![(w("a b"), w("b a")), (w("a"), w("a"))]);
        assert_eq!(ZpcpInstance::from_pairs([]), Err(ZpcpError::NoPairs));
    }
}
