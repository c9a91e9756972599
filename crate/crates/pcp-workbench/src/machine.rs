//! Deterministic single-tape Turing machines and bounded simulation.
//!
//! Configurations are kept canonical: the left part never starts with a
//! blank, the right part never ends with one, and the head reads the first
//! letter of the right part (a blank when the right part is empty).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::wordcore::{Letter, Word};

/// Head movement of a transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    Left,
    Right,
    Stay,
}

impl Move {
    pub fn as_str(self) -> &'static str {
        match self {
            Move::Left => "L",
            Move::Right => "R",
            Move::Stay => "S",
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Move {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L" => Ok(Move::Left),
            "R" => Ok(Move::Right),
            "S" => Ok(Move::Stay),
            other => Err(format!("unknown move {other:?}, expected L, R, or S")),
        }
    }
}

/// Target of a transition: next state, letter written, head movement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub next: Letter,
    pub write: Letter,
    pub movement: Move,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MachineError {
    #[error("blank letter {0} is not in the tape alphabet")]
    BlankNotInTape(Letter),
    #[error("input letter {0} is not in the tape alphabet")]
    InputNotInTape(Letter),
    #[error("initial state {0} is not a state")]
    InitialNotState(Letter),
    #[error("halt state {0} is not a state")]
    HaltNotState(Letter),
    #[error("transition defined from the halt state on {0}")]
    TransitionFromHalt(Letter),
    #[error("transition references unknown state {0}")]
    UnknownState(Letter),
    #[error("transition references unknown tape letter {0}")]
    UnknownTapeLetter(Letter),
    #[error("duplicate transition for ({0}, {1})")]
    DuplicateTransition(Letter, Letter),
    #[error("machine letter {0} must be plain: no overline, no subscript")]
    DecoratedLetter(Letter),
    #[error("states and tape alphabet share the spelling {0:?}")]
    StateTapeClash(String),
}

/// A deterministic Turing machine with a single halt state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    states: BTreeSet<Letter>,
    input: BTreeSet<Letter>,
    tape: BTreeSet<Letter>,
    blank: Letter,
    initial: Letter,
    halt: Letter,
    transitions: BTreeMap<(Letter, Letter), Transition>,
}

/// Outcome of a bounded run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// The step function became undefined within the bound.
    Halted,
    /// The bound was exhausted with the step function still defined.
    Running,
}

impl TuringMachine {
    /// Builds a machine, checking determinism and alphabet hygiene.
    ///
    /// Transitions are given as `(state, read, target)` records; determinism
    /// means at most one record per `(state, read)` pair, and none from the
    /// halt state.
    pub fn new(
        states: impl IntoIterator<Item = Letter>,
        input: impl IntoIterator<Item = Letter>,
        tape: impl IntoIterator<Item = Letter>,
        blank: Letter,
        initial: Letter,
        halt: Letter,
        transitions: impl IntoIterator<Item = (Letter, Letter, Transition)>,
    ) -> Result<Self, MachineError> {
        let states: BTreeSet<Letter> = states.into_iter().collect();
        let input: BTreeSet<Letter> = input.into_iter().collect();
        let tape: BTreeSet<Letter> = tape.into_iter().collect();

        for letter in states.iter().chain(tape.iter()) {
            if letter.is_overlined() || letter.subscript().is_some() {
                return Err(MachineError::DecoratedLetter(letter.clone()));
            }
        }
        if !tape.contains(&blank) {
            return Err(MachineError::BlankNotInTape(blank));
        }
        if let Some(bad) = input.iter().find(|l| !tape.contains(l)) {
            return Err(MachineError::InputNotInTape(bad.clone()));
        }
        if !states.contains(&initial) {
            return Err(MachineError::InitialNotState(initial));
        }
        if !states.contains(&halt) {
            return Err(MachineError::HaltNotState(halt));
        }
        let tape_spellings: BTreeSet<String> = tape.iter().map(Letter::to_string).collect();
        if let Some(clash) = states
            .iter()
            .map(Letter::to_string)
            .find(|s| tape_spellings.contains(s))
        {
            return Err(MachineError::StateTapeClash(clash));
        }

        let mut map = BTreeMap::new();
        for (state, read, target) in transitions {
            if state == halt {
                return Err(MachineError::TransitionFromHalt(read));
            }
            for q in [&state, &target.next] {
                if !states.contains(q) {
                    return Err(MachineError::UnknownState(q.clone()));
                }
            }
            for b in [&read, &target.write] {
                if !tape.contains(b) {
                    return Err(MachineError::UnknownTapeLetter(b.clone()));
                }
            }
            if map.insert((state.clone(), read.clone()), target).is_some() {
                return Err(MachineError::DuplicateTransition(state, read));
            }
        }

        Ok(TuringMachine {
            states,
            input,
            tape,
            blank,
            initial,
            halt,
            transitions: map,
        })
    }

    pub fn states(&self) -> &BTreeSet<Letter> {
        &self.states
    }

    pub fn input_alphabet(&self) -> &BTreeSet<Letter> {
        &self.input
    }

    pub fn tape_alphabet(&self) -> &BTreeSet<Letter> {
        &self.tape
    }

    pub fn blank(&self) -> &Letter {
        &self.blank
    }

    pub fn initial(&self) -> &Letter {
        &self.initial
    }

    pub fn halt(&self) -> &Letter {
        &self.halt
    }

    pub fn transitions(&self) -> &BTreeMap<(Letter, Letter), Transition> {
        &self.transitions
    }

    pub fn transition(&self, state: &Letter, read: &Letter) -> Option<&Transition> {
        self.transitions.get(&(state.clone(), read.clone()))
    }

    /// The configuration on `input` with the head at its first letter.
    pub fn initial_configuration(&self, input: &Word) -> Configuration {
        Configuration::canonical(Word::new(), self.initial.clone(), input.clone(), &self.blank)
    }

    /// Applies the transition for the current state and head letter, or
    /// `None` when no transition is defined.
    pub fn step(&self, c: &Configuration) -> Option<Configuration> {
        let head = c.right.first().cloned().unwrap_or_else(|| self.blank.clone());
        let t = self.transitions.get(&(c.state.clone(), head))?;
        let rest = if c.right.is_empty() {
            Word::new()
        } else {
            c.right.sub(1, c.right.len())
        };
        let (left, right) = match t.movement {
            Move::Stay => (c.left.clone(), Word::single(t.write.clone()).concat(&rest)),
            Move::Right => {
                let mut left = c.left.clone();
                left.push(t.write.clone());
                (left, rest)
            }
            Move::Left => {
                let (left, uncovered) = if c.left.is_empty() {
                    (Word::new(), self.blank.clone())
                } else {
                    (c.left.sub(0, c.left.len() - 1), c.left.last().unwrap().clone())
                };
                let mut right = Word::single(uncovered);
                right.push(t.write.clone());
                (left, right.concat(&rest))
            }
        };
        Some(Configuration::canonical(left, t.next.clone(), right, &self.blank))
    }

    /// Runs from `input` for at most `max_steps` steps.
    ///
    /// The trace starts with the initial configuration; the status is
    /// `Halted` exactly when the step function became undefined within the
    /// bound.
    pub fn run_bounded(&self, input: &Word, max_steps: usize) -> (Vec<Configuration>, Status) {
        let mut trace = vec![self.initial_configuration(input)];
        for _ in 0..max_steps {
            match self.step(trace.last().expect("trace is nonempty")) {
                Some(next) => trace.push(next),
                None => return (trace, Status::Halted),
            }
        }
        (trace, Status::Running)
    }
}

/// A machine configuration `left · state · right` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    left: Word,
    state: Letter,
    right: Word,
}

impl Configuration {
    /// Builds a configuration, trimming leading blanks on the left and
    /// trailing blanks on the right.
    pub fn canonical(left: Word, state: Letter, right: Word, blank: &Letter) -> Self {
        let lead = left.iter().take_while(|l| *l == blank).count();
        let tail = right.iter().rev().take_while(|l| *l == blank).count();
        Configuration {
            left: left.sub(lead, left.len()),
            state,
            right: right.sub(0, right.len() - tail),
        }
    }

    pub fn left(&self) -> &Word {
        &self.left
    }

    pub fn state(&self) -> &Letter {
        &self.state
    }

    pub fn right(&self) -> &Word {
        &self.right
    }

    /// The tape letter under the head, with the blank materialized lazily.
    pub fn head<'a>(&'a self, blank: &'a Letter) -> &'a Letter {
        self.right.first().unwrap_or(blank)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.left.is_empty() {
            parts.push(self.left.to_string());
        }
        parts.push(self.state.to_string());
        if !self.right.is_empty() {
            parts.push(self.right.to_string());
        }
        f.write_str(&parts.join(" "))
    }
}
