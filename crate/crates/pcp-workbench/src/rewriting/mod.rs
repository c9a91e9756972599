//! Semi-Thue systems: finite rewriting rules over words, bounded
//! derivation searches, and the structural determinism checks used by the
//! machine-to-system reduction.

mod determinism;
mod search;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::wordcore::{Letter, Word};

pub use determinism::{check_class_determinism, CheckOutcome, DeterminismReport};
pub use search::{derive_bounded, find_circular, orbit, OrbitError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("rule {index} has an empty left-hand side")]
    EmptyLhs { index: usize },
    #[error("rule {index} uses {letter}, which is outside the declared alphabet")]
    OutsideAlphabet { index: usize, letter: Letter },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule index {0} out of range")]
    BadRuleIndex(usize),
    #[error("rule {rule} does not match {word} at position {position}")]
    NoMatch {
        rule: usize,
        position: usize,
        word: Word,
    },
}

/// A rewriting rule `lhs -> rhs`; the left-hand side is nonempty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Rule { lhs, rhs }
    }

    /// The rule with every letter's overline flag flipped.
    pub fn toggled_overline(&self) -> Rule {
        Rule {
            lhs: self.lhs.toggled_overline(),
            rhs: self.rhs.toggled_overline(),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// A semi-Thue system: an alphabet and an ordered list of rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiThueSystem {
    pub alphabet: BTreeSet<Letter>,
    pub rules: Vec<Rule>,
}

impl SemiThueSystem {
    /// Builds a system, inferring the alphabet from the rules.
    pub fn new(rules: Vec<Rule>) -> Result<Self, SystemError> {
        let alphabet = rules
            .iter()
            .flat_map(|r| r.lhs.iter().chain(r.rhs.iter()))
            .cloned()
            .collect();
        SemiThueSystem::with_alphabet(alphabet, rules)
    }

    /// Builds a system over an explicit alphabet.
    pub fn with_alphabet(
        alphabet: BTreeSet<Letter>,
        rules: Vec<Rule>,
    ) -> Result<Self, SystemError> {
        for (index, rule) in rules.iter().enumerate() {
            if rule.lhs.is_empty() {
                return Err(SystemError::EmptyLhs { index });
            }
            if let Some(letter) = rule
                .lhs
                .iter()
                .chain(rule.rhs.iter())
                .find(|l| !alphabet.contains(l))
            {
                return Err(SystemError::OutsideAlphabet {
                    index,
                    letter: letter.clone(),
                });
            }
        }
        Ok(SemiThueSystem { alphabet, rules })
    }

    /// Applies one rule at one position.
    pub fn rewrite_at(&self, word: &Word, step: &DerivationStep) -> Result<Word, RewriteError> {
        let rule = self
            .rules
            .get(step.rule)
            .ok_or(RewriteError::BadRuleIndex(step.rule))?;
        let end = step.position + rule.lhs.len();
        if end > word.len() || word.sub(step.position, end) != rule.lhs {
            return Err(RewriteError::NoMatch {
                rule: step.rule,
                position: step.position,
                word: word.clone(),
            });
        }
        Ok(word
            .sub(0, step.position)
            .concat(&rule.rhs)
            .concat(&word.sub(end, word.len())))
    }

    /// All single-step successors of `word`, ordered by (position, rule).
    pub fn successors(&self, word: &Word) -> Vec<(DerivationStep, Word)> {
        let mut out = Vec::new();
        for position in 0..=word.len() {
            for (rule, r) in self.rules.iter().enumerate() {
                if position + r.lhs.len() > word.len() {
                    continue;
                }
                if word.sub(position, position + r.lhs.len()) == r.lhs {
                    let step = DerivationStep { rule, position };
                    let result = self.rewrite_at(word, &step).expect("matched rule applies");
                    out.push((step, result));
                }
            }
        }
        out
    }
}

/// One rewriting step: which rule fired and where.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivationStep {
    pub rule: usize,
    pub position: usize,
}

/// A derivation: a start word and the steps taken, each with its result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub start: Word,
    pub steps: Vec<(DerivationStep, Word)>,
}

impl DerivationTrace {
    pub fn new(start: Word) -> Self {
        DerivationTrace {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The final word (the start word for an empty trace).
    pub fn last(&self) -> &Word {
        self.steps.last().map(|(_, w)| w).unwrap_or(&self.start)
    }

    /// All words visited, starting with the start word.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|(_, w)| w))
    }

    /// Whether the trace returns to its start word in at least one step.
    pub fn is_circular(&self) -> bool {
        !self.steps.is_empty() && *self.last() == self.start
    }

    /// Whether every step is a correct application of a rule of `system`.
    pub fn replays(&self, system: &SemiThueSystem) -> bool {
        let mut current = self.start.clone();
        for (step, result) in &self.steps {
            match system.rewrite_at(&current, step) {
                Ok(word) if word == *result => current = word,
                _ => return false,
            }
        }
        true
    }
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.start)?;
        for (step, word) in &self.steps {
            write!(f, "\n  -[{}@{}]-> {}", step.rule, step.position, word)?;
        }
        Ok(())
    }
}
