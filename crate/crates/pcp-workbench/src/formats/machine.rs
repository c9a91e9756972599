//! The machine file format.
//!
//! ```text
//! states: q0 q1 H
//! initial: q0
//! halt: H
//! blank: _
//! input: a b
//! tape: _ a b
//! delta: q0 _ -> q1 a R
//! ```
//!
//! `input:` may be empty and `delta:` records may be absent; everything
//! else is required exactly once.

use std::str::FromStr;

use thiserror::Error;

use crate::machine::{MachineError, Move, Transition, TuringMachine};
use crate::wordcore::Letter;

use super::{content_lines, err, parse_letter, parse_word, record, split_arrow, split_key, Field, ParseError};

/// Distinguishes syntax errors from machine-level validation failures, so
/// that callers can report them separately.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MachineParseError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

pub fn parse_machine(text: &str) -> Result<TuringMachine, MachineParseError> {
    let mut states = Field::new("states");
    let mut initial = Field::new("initial");
    let mut halt = Field::new("halt");
    let mut blank = Field::new("blank");
    let mut input = Field::new("input");
    let mut tape = Field::new("tape");
    let mut transitions: Vec<(Letter, Letter, Transition)> = Vec::new();

    for (line_no, line) in content_lines(text) {
        let (key, value) = split_key(line_no, line)?;
        match key {
            "states" => states.set(line_no, parse_word(line_no, value)?)?,
            "initial" => initial.set(line_no, parse_letter(line_no, value)?)?,
            "halt" => halt.set(line_no, parse_letter(line_no, value)?)?,
            "blank" => blank.set(line_no, parse_letter(line_no, value)?)?,
            "input" => input.set(line_no, parse_word(line_no, value)?)?,
            "tape" => tape.set(line_no, parse_word(line_no, value)?)?,
            "delta" => transitions.push(parse_delta(line_no, value)?),
            other => return Err(err(line_no, format!("unknown record {other:?}")).into()),
        }
    }

    let states = states.take()?;
    let tape = tape.take()?;
    let input = input.optional().unwrap_or_default();
    let machine = TuringMachine::new(
        states.iter().cloned(),
        input.iter().cloned(),
        tape.iter().cloned(),
        blank.take()?,
        initial.take()?,
        halt.take()?,
        transitions,
    )?;
    Ok(machine)
}

fn parse_delta(line_no: usize, value: &str) -> Result<(Letter, Letter, Transition), ParseError> {
    let (from, to) = split_arrow(line_no, value)?;
    let from = parse_word(line_no, from)?;
    let to = parse_word(line_no, to)?;
    let bad = |side: &str| err(line_no, format!("delta {side} must be: state letter"));
    let [state, read] = &from[..] else {
        return Err(bad("source"));
    };
    let [next, write, movement] = &to[..] else {
        return Err(bad("target, plus a move"));
    };
    let movement = Move::from_str(&movement.to_string())
        .map_err(|_| err(line_no, format!("unknown move {movement}, expected L, R, or S")))?;
    Ok((
        state.clone(),
        read.clone(),
        Transition {
            next: next.clone(),
            write: write.clone(),
            movement,
        },
    ))
}

pub fn write_machine(tm: &TuringMachine) -> String {
    let join = |letters: &std::collections::BTreeSet<Letter>| {
        letters.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    };
    let mut out = String::new();
    out.push_str(&record("states", &join(tm.states())));
    out.push_str(&record("initial", &tm.initial().to_string()));
    out.push_str(&record("halt", &tm.halt().to_string()));
    out.push_str(&record("blank", &tm.blank().to_string()));
    out.push_str(&record("input", &join(tm.input_alphabet())));
    out.push_str(&record("tape", &join(tm.tape_alphabet())));
    for ((state, read), t) in tm.transitions() {
        out.push_str(&record(
            "delta",
            &format!("{state} {read} -> {} {} {}", t.next, t.write, t.movement),
        ));
    }
    out
}
