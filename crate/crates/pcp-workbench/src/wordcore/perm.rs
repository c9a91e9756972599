use itertools::Itertools;

use super::word::Word;

/// A witness for `u ~_m v`: `u = factors[0] .. factors[m-1]` and
/// `v = factors[permutation[0]] .. factors[permutation[m-1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermWitness {
    pub factors: Vec<Word>,
    pub permutation: Vec<usize>,
}

impl PermWitness {
    /// Replays the witness against a concrete pair of words.
    pub fn checks(&self, u: &Word, v: &Word) -> bool {
        let m = self.factors.len();
        if self.permutation.len() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for &i in &self.permutation {
            if i >= m || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        let glue = |order: &mut dyn Iterator<Item = usize>| {
            let mut out = Word::new();
            for i in order {
                out = out.concat(&self.factors[i]);
            }
            out
        };
        glue(&mut (0..m)) == *u && glue(&mut self.permutation.iter().copied()) == *v
    }
}

/// Whether `u ~_m v`: `u` factors into `m` (possibly empty) blocks whose
/// permutation spells `v`. Returns the first witness in cut-then-permutation
/// lexicographic order.
pub fn sim_m(u: &Word, v: &Word, m: usize) -> Option<PermWitness> {
    if m == 0 {
        return None;
    }
    if u.len() != v.len() {
        return None;
    }
    for cuts in cut_points(u.len(), m - 1) {
        let factors = split_by(u, &cuts);
        for perm in (0..m).permutations(m) {
            let mut glued = Word::new();
            for &i in &perm {
                glued = glued.concat(&factors[i]);
            }
            if glued == *v {
                return Some(PermWitness {
                    factors,
                    permutation: perm,
                });
            }
        }
    }
    None
}

/// Non-decreasing cut-point vectors of length `k` into a word of length
/// `n`, in lexicographic order.
fn cut_points(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn recurse(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for c in start..=n {
            current.push(c);
            recurse(n, k, c, current, out);
            current.pop();
        }
    }
    recurse(n, k, 0, &mut current, &mut out);
    out
}

fn split_by(u: &Word, cuts: &[usize]) -> Vec<Word> {
    let mut factors = Vec::with_capacity(cuts.len() + 1);
    let mut prev = 0;
    for &c in cuts {
        factors.push(u.sub(prev, c));
        prev = c;
    }
    factors.push(u.sub(prev, u.len()));
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordcore::conjugacy::is_conjugate;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn sim_one_is_equality() {
        let witness = sim_m(&w("a b"), &w("a b"), 1).unwrap();
        assert_eq!(witness.factors, vec![w("a b")]);
        assert_eq!(witness.permutation, vec![0]);
        assert!(sim_m(&w("a b"), &w("b a"), 1).is_none());
    }

    #[test]
    fn sim_two_finds_the_swap() {
        let witness = sim_m(&w("a a b"), &w("a b a"), 2).unwrap();
        assert_eq!(witness.factors, vec![w("a"), w("a b")]);
        assert_eq!(witness.permutation, vec![1, 0]);
        assert!(witness.checks(&w("a a b"), &w("a b a")));
    }

    #[test]
    fn witnesses_replay() {
        for (u, v, m) in [("a b b a", "b a a b", 2), ("a b a", "a a b", 3)] {
            let witness = sim_m(&w(u), &w(v), m).unwrap();
            assert!(witness.checks(&w(u), &w(v)));
        }
    }

    #[test]
    fn empty_factors_are_allowed() {
        // ~_3 with one empty block.
        assert!(sim_m(&w("a b"), &w("b a"), 3).is_some());
        assert!(sim_m(&w(""), &w(""), 2).is_some());
    }

    #[test]
    fn sim_two_matches_conjugacy_on_small_words() {
        let letters = [w("a"), w("b")];
        let mut words = vec![w("")];
        let mut last = vec![w("")];
        for _ in 0..4 {
            let mut next = Vec::new();
            for word in &last {
                for l in &letters {
                    next.push(word.concat(l));
                }
            }
            words.extend(next.iter().cloned());
            last = next;
        }
        for u in &words {
            for v in &words {
                assert_eq!(
                    sim_m(u, v, 2).is_some(),
                    is_conjugate(u, v).is_some(),
                    "u = {u}, v = {v}"
                );
            }
        }
    }
}
