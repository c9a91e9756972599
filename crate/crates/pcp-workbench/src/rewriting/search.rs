use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use super::{DerivationStep, DerivationTrace, SemiThueSystem};
use crate::wordcore::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("word {word} has {count} successors after {steps} steps; orbit requires determinism")]
    Branching {
        word: Word,
        count: usize,
        steps: usize,
    },
}

/// Breadth-first search for a shortest derivation `start ->* target` of at
/// most `max_steps` steps.
pub fn derive_bounded(
    system: &SemiThueSystem,
    start: &Word,
    target: &Word,
    max_steps: usize,
) -> Option<DerivationTrace> {
    if start == target {
        return Some(DerivationTrace::new(start.clone()));
    }
    bfs(system, start, |word, depth| depth > 0 && word == target, max_steps)
}

/// Follows the unique rewriting step from `w0` until the word returns to
/// `w0`, no rule applies, or `max_steps` is exhausted. Errors if any visited
/// word has more than one successor.
pub fn orbit(
    system: &SemiThueSystem,
    w0: &Word,
    max_steps: usize,
) -> Result<DerivationTrace, OrbitError> {
    let mut trace = DerivationTrace::new(w0.clone());
    let mut current = w0.clone();
    for steps in 0..max_steps {
        let mut succ = system.successors(&current);
        match succ.len() {
            0 => return Ok(trace),
            1 => {
                let (step, word) = succ.pop().expect("one successor");
                trace.steps.push((step, word.clone()));
                if word == *w0 {
                    return Ok(trace);
                }
                current = word;
            }
            count => {
                return Err(OrbitError::Branching {
                    word: current,
                    count,
                    steps,
                })
            }
        }
    }
    Ok(trace)
}

/// Searches for a circular derivation `w0 ->+ w0` of at most `max_steps`
/// steps: follows the orbit when the system is deterministic along it, and
/// falls back to breadth-first search on branching.
pub fn find_circular(
    system: &SemiThueSystem,
    w0: &Word,
    max_steps: usize,
) -> Option<DerivationTrace> {
    match orbit(system, w0, max_steps) {
        Ok(trace) => trace.is_circular().then_some(trace),
        Err(OrbitError::Branching { .. }) => {
            bfs(system, w0, |word, depth| depth > 0 && word == w0, max_steps)
        }
    }
}

/// Breadth-first search from `start` for the first word satisfying `found`,
/// exploring derivations of at most `max_steps` steps. The start word only
/// satisfies the search at depth > 0, which makes circular searches work.
fn bfs(
    system: &SemiThueSystem,
    start: &Word,
    found: impl Fn(&Word, usize) -> bool,
    max_steps: usize,
) -> Option<DerivationTrace> {
    // Parent links for trace reconstruction; the start word has no parent.
    let mut parents: HashMap<Word, (Word, DerivationStep)> = HashMap::new();
    let mut visited: HashSet<Word> = HashSet::new();
    visited.insert(start.clone());
    let mut queue: VecDeque<(Word, usize)> = VecDeque::new();
    queue.push_back((start.clone(), 0));
    while let Some((word, depth)) = queue.pop_front() {
        if depth == max_steps {
            continue;
        }
        for (step, next) in system.successors(&word) {
            if found(&next, depth + 1) {
                let mut steps = vec![(step, next.clone())];
                let mut back = word.clone();
                while &back != start {
                    let (parent, parent_step) = parents[&back].clone();
                    steps.push((parent_step, back));
                    back = parent;
                }
                steps.reverse();
                return Some(DerivationTrace {
                    start: start.clone(),
                    steps,
                });
            }
            if visited.insert(next.clone()) {
                parents.insert(next.clone(), (word.clone(), step));
                queue.push_back((next, depth + 1));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::Rule;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    fn sys(rules: &[(&str, &str)]) -> SemiThueSystem {
        SemiThueSystem::new(
            rules
                .iter()
                .map(|(l, r)| Rule::new(w(l), w(r)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn bfs_finds_a_shortest_derivation() {
        let system = sys(&[("a b", "b a")]);
        let trace = derive_bounded(&system, &w("a a b b"), &w("b b a a"), 6).unwrap();
        assert_eq!(trace.len(), 4);
        assert!(trace.replays(&system));
        assert_eq!(*trace.last(), w("b b a a"));
        assert!(derive_bounded(&system, &w("a a b b"), &w("b b a a"), 3).is_none());
    }

    #[test]
    fn derive_bounded_accepts_the_trivial_target() {
        let system = sys(&[("a", "b")]);
        let trace = derive_bounded(&system, &w("a"), &w("a"), 0).unwrap();
        assert!(trace.is_empty());
    }

    #[test]
    fn orbit_stops_on_halt() {
        let system = sys(&[("a b", "b a")]);
        let trace = orbit(&system, &w("a b"), 10).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(*trace.last(), w("b a"));
        assert!(!trace.is_circular());
    }

    #[test]
    fn orbit_reports_branching() {
        let system = sys(&[("a", "b"), ("a a", "b")]);
        assert!(matches!(
            orbit(&system, &w("a a"), 10),
            Err(OrbitError::Branching { count: 3, .. })
        ));
    }

    #[test]
    fn find_circular_follows_deterministic_cycles() {
        let system = sys(&[("a b", "b a"), ("b a", "a b")]);
        let trace = find_circular(&system, &w("a b"), 10).unwrap();
        assert_eq!(trace.len(), 2);
        assert!(trace.is_circular());
        assert!(trace.replays(&system));
    }

    #[test]
    fn find_circular_falls_back_to_bfs_on_branching() {
        // Two rules apply to "a a"; only the cycle through "b" returns.
        let system = sys(&[("a a", "b"), ("a", "c0"), ("b", "a a"), ("c0", "b")]);
        let trace = find_circular(&system, &w("a a"), 10).unwrap();
        assert!(trace.is_circular());
        assert!(trace.replays(&system));
        assert_eq!(trace.len(), 2);
    }

    #[test]
    fn find_circular_respects_the_bound() {
        let system = sys(&[("a b", "b a"), ("b a", "a b")]);
        assert!(find_circular(&system, &w("a b"), 1).is_none());
    }
}
