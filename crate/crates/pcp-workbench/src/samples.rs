//! Small ready-made machines and instances.
//!
//! These fixtures are shared by the integration tests and the command-line
//! tool's documentation; they are deliberately tiny so every derived object
//! can be checked by hand.

use crate::machine::{Move, Transition, TuringMachine};
use crate::st2cpcp::CpcpInstance;
use crate::wordcore::{Letter, Morphism, Word};
use crate::zpcp::ZpcpInstance;

fn letter(s: &str) -> Letter {
    s.parse().expect("fixture letters are valid")
}

fn word(s: &str) -> Word {
    Word::parse(s).expect("fixture words are valid")
}

fn machine(
    states: &[&str],
    tape: &[&str],
    transitions: &[(&str, &str, &str, &str, Move)],
) -> TuringMachine {
    TuringMachine::new(
        states.iter().map(|s| letter(s)),
        [],
        tape.iter().map(|s| letter(s)),
        letter("_"),
        letter("q0"),
        letter("H"),
        transitions.iter().map(|(q, b, p, c, m)| {
            (
                letter(q),
                letter(b),
                Transition {
                    next: letter(p),
                    write: letter(c),
                    movement: *m,
                },
            )
        }),
    )
    .expect("fixture machines are valid")
}

/// The smallest halting machine: one stay-move into the halt state, a
/// one-letter tape alphabet. Its rewriting system has a circular orbit of
/// length 8.
pub fn instant_halt() -> TuringMachine {
    machine(
        &["q0", "H"],
        &["_"],
        &[("q0", "_", "H", "_", Move::Stay)],
    )
}

/// Writes one letter, moves right, writes another, halts. The smallest
/// machine that both moves and grows the visited tape.
pub fn small_writer() -> TuringMachine {
    machine(
        &["q0", "q1", "H"],
        &["_", "a", "b"],
        &[
            ("q0", "_", "q1", "a", Move::Right),
            ("q1", "_", "H", "b", Move::Stay),
        ],
    )
}

/// Runs right forever without writing. Never halts, so its rewriting system
/// has no circular derivation from the start word.
pub fn right_runner() -> TuringMachine {
    machine(
        &["q0", "H"],
        &["_"],
        &[("q0", "_", "q0", "_", Move::Right)],
    )
}

/// The classic two-letter conjugate instance with minimal solution `a b`:
/// h maps a to a b a and fixes b, g maps a to b a b and b to a.
pub fn aba_instance() -> CpcpInstance {
    CpcpInstance {
        h: Morphism::parse_pairs(&[("a", "a b a"), ("b", "b")]),
        g: Morphism::parse_pairs(&[("a", "b a b"), ("b", "a")]),
        rows: vec![letter("a"), letter("b")],
        reduction: None,
    }
}

/// One pair (a b, b a): solved by the periodic word with period a b at
/// shift 1.
pub fn zpcp_swap() -> ZpcpInstance {
    ZpcpInstance::from_pairs([(word("a b"), word("b a"))]).expect("one pair")
}

/// One pair (a, a a): the sides only differ in rate, solved at shift 0.
pub fn zpcp_stretch() -> ZpcpInstance {
    ZpcpInstance::from_pairs([(word("a"), word("a a"))]).expect("one pair")
}

/// One pair (a, b): no bi-infinite solution at any shift.
pub fn zpcp_disjoint() -> ZpcpInstance {
    ZpcpInstance::from_pairs([(word("a"), word("b"))]).expect("one pair")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(instant_halt().transitions().len(), 1);
        assert_eq!(small_writer().transitions().len(), 2);
        assert_eq!(right_runner().transitions().len(), 1);
        assert_eq!(aba_instance().rows.len(), 2);
        assert_eq!(zpcp_swap().n, 1);
        assert_eq!(zpcp_stretch().n, 1);
        assert_eq!(zpcp_disjoint().n, 1);
    }
}
