//! Compiling Turing machines into two-phase rewriting systems whose
//! circular derivations witness halting.
//!
//! The construction proceeds in layers: simulation rules mirror the
//! transition table, cancellation rules erase a halted tape letter by
//! letter, tape letters are encoded into fixed-width words over {a, b},
//! every rule is duplicated in an overlined copy, and four phase rules tie
//! the halting word, the intermediate letter s, and the start word into a
//! single cycle. [`validate_reduction`] checks the structural properties
//! the correspondence encoding relies on, and [`bisimulate`] replays a
//! machine run against the rewriting orbit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::machine::{Configuration, Move, Status, TuringMachine};
use crate::rewriting::{
    check_class_determinism, CheckOutcome, DeterminismReport, OrbitError, Rule, SemiThueSystem,
    SystemError,
};
use crate::wordcore::{Letter, Role, Word};

/// Function of a rule inside a [`ReductionSystem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleRole {
    /// Mirrors one machine transition in one tape context.
    Simulate,
    /// Materializes a blank in front of the right marker.
    Extend,
    /// Erases one tape letter next to the halt state.
    Cancel,
    /// Collapses the halting word to the intermediate letter.
    HaltToS,
    /// Expands the intermediate letter to the overlined start word.
    SToStart,
    OvSimulate,
    OvExtend,
    OvCancel,
    OvHaltToS,
    OvSToStart,
}

impl RuleRole {
    /// The role of the overline-toggled copy of a rule with this role.
    pub fn toggled(self) -> RuleRole {
        match self {
            RuleRole::Simulate => RuleRole::OvSimulate,
            RuleRole::Extend => RuleRole::OvExtend,
            RuleRole::Cancel => RuleRole::OvCancel,
            RuleRole::HaltToS => RuleRole::OvHaltToS,
            RuleRole::SToStart => RuleRole::OvSToStart,
            RuleRole::OvSimulate => RuleRole::Simulate,
            RuleRole::OvExtend => RuleRole::Extend,
            RuleRole::OvCancel => RuleRole::Cancel,
            RuleRole::OvHaltToS => RuleRole::HaltToS,
            RuleRole::OvSToStart => RuleRole::SToStart,
        }
    }

    pub fn is_overlined(self) -> bool {
        matches!(
            self,
            RuleRole::OvSimulate
                | RuleRole::OvExtend
                | RuleRole::OvCancel
                | RuleRole::OvHaltToS
                | RuleRole::OvSToStart
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RuleRole::Simulate => "simulate",
            RuleRole::Extend => "extend",
            RuleRole::Cancel => "cancel",
            RuleRole::HaltToS => "halt-to-s",
            RuleRole::SToStart => "s-to-start",
            RuleRole::OvSimulate => "ov-simulate",
            RuleRole::OvExtend => "ov-extend",
            RuleRole::OvCancel => "ov-cancel",
            RuleRole::OvHaltToS => "ov-halt-to-s",
            RuleRole::OvSToStart => "ov-s-to-start",
        }
    }
}

impl fmt::Display for RuleRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RuleRole {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let all = [
            RuleRole::Simulate,
            RuleRole::Extend,
            RuleRole::Cancel,
            RuleRole::HaltToS,
            RuleRole::SToStart,
            RuleRole::OvSimulate,
            RuleRole::OvExtend,
            RuleRole::OvCancel,
            RuleRole::OvHaltToS,
            RuleRole::OvSToStart,
        ];
        all.into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown rule role {s:?}"))
    }
}

/// Injective fixed-width encoding of a tape alphabet into {a, b} words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingMap {
    width: usize,
    encode: BTreeMap<Letter, Word>,
    decode: BTreeMap<Word, Letter>,
}

impl EncodingMap {
    /// Encodes `tape` with the blank mapped to the first codeword, the
    /// remaining letters following in sorted order, and codewords assigned
    /// lexicographically (all-a first).
    pub fn for_alphabet(tape: &BTreeSet<Letter>, blank: &Letter) -> EncodingMap {
        let n = tape.len().max(1);
        let width = if n <= 1 {
            1
        } else {
            (n - 1).ilog2() as usize + 1
        };
        let zero: Letter = "a".parse().expect("a is a valid letter");
        let one: Letter = "b".parse().expect("b is a valid letter");
        let codeword = |i: usize| -> Word {
            (0..width)
                .rev()
                .map(|bit| if i >> bit & 1 == 1 { one.clone() } else { zero.clone() })
                .collect()
        };
        let mut order = vec![blank.clone()];
        order.extend(tape.iter().filter(|l| *l != blank).cloned());
        let mut encode = BTreeMap::new();
        let mut decode = BTreeMap::new();
        for (i, letter) in order.into_iter().enumerate() {
            let code = codeword(i);
            decode.insert(code.clone(), letter.clone());
            encode.insert(letter, code);
        }
        EncodingMap {
            width,
            encode,
            decode,
        }
    }

    pub fn for_machine(tm: &TuringMachine) -> EncodingMap {
        Self::for_alphabet(tm.tape_alphabet(), tm.blank())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn code(&self, letter: &Letter) -> Option<&Word> {
        self.encode.get(letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = &Letter> {
        self.encode.keys()
    }

    /// Replaces every encoded letter by its codeword and keeps the rest
    /// (states, markers) unchanged.
    pub fn encode_mixed(&self, word: &Word) -> Word {
        let mut out = Word::new();
        for letter in word.iter() {
            match self.encode.get(letter) {
                Some(code) => out = out.concat(code),
                None => out.push(letter.clone()),
            }
        }
        out
    }

    /// Decodes a word consisting purely of codewords.
    pub fn decode_tape(&self, word: &Word) -> Option<Word> {
        if !word.len().is_multiple_of(self.width) {
            return None;
        }
        let mut out = Word::new();
        for chunk in word.chunks(self.width) {
            let code = Word::from(chunk.to_vec());
            out.push(self.decode.get(&code)?.clone());
        }
        Some(out)
    }

    /// Rebuilds a map from explicit (letter, codeword) pairs, as read back
    /// from a serialized table.
    pub fn from_codes(
        codes: impl IntoIterator<Item = (Letter, Word)>,
    ) -> Result<EncodingMap, EncodingError> {
        let mut encode = BTreeMap::new();
        let mut decode = BTreeMap::new();
        let mut width = None;
        for (letter, code) in codes {
            match width {
                None => width = Some(code.len()),
                Some(w) if w != code.len() => return Err(EncodingError::MixedWidths),
                Some(_) => {}
            }
            if decode.insert(code.clone(), letter.clone()).is_some() {
                return Err(EncodingError::NotInjective);
            }
            if encode.insert(letter, code).is_some() {
                return Err(EncodingError::DuplicateLetter);
            }
        }
        match width {
            None | Some(0) => Err(EncodingError::Empty),
            Some(width) => Ok(EncodingMap {
                width,
                encode,
                decode,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, Error, PartialEq, Eq)]
pub enum EncodingError {
    #[error("the encoding table is empty")]
    Empty,
    #[error("the codeword lengths disagree")]
    MixedWidths,
    #[error("two letters share a codeword")]
    NotInjective,
    #[error("a letter appears twice in the table")]
    DuplicateLetter,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ReductionError {
    #[error("state {0} collides with a reserved spelling of the target alphabet")]
    ReservedStateSpelling(Letter),
    #[error("tape letter {0} collides with a marker spelling")]
    ReservedTapeSpelling(Letter),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// A rewriting system built from a machine, together with the anchor words
/// and bookkeeping the correspondence encoding needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionSystem {
    pub system: SemiThueSystem,
    /// Encoded start word `L q0 code(blank) R`.
    pub w0: Word,
    /// Encoded halting word `L H R`.
    pub u_halt: Word,
    /// The intermediate phase letter.
    pub s: Letter,
    /// Role of each rule, indexed like `system.rules`.
    pub roles: Vec<RuleRole>,
    pub encoding: EncodingMap,
    pub machine_states: BTreeSet<Letter>,
}

impl ReductionSystem {
    /// Index of the unique rule with the given role, if it is unique.
    pub fn role_index(&self, role: RuleRole) -> Option<usize> {
        let mut hits = self.roles.iter().enumerate().filter(|(_, r)| **r == role);
        let (i, _) = hits.next()?;
        hits.next().is_none().then_some(i)
    }

    /// Number of rules in the plain (non-overlined) block.
    pub fn plain_rule_count(&self) -> Option<usize> {
        self.role_index(RuleRole::SToStart).map(|h| h + 1)
    }

    /// The name letter of a rule: `t<i>` inside the plain block, the
    /// overlined `t<i>` of its twin inside the overlined block.
    pub fn rule_letter(&self, index: usize) -> Option<Letter> {
        let plain = self.plain_rule_count()?;
        if index >= self.system.rules.len() {
            return None;
        }
        if index < plain {
            Some(Letter::rule_ref(index))
        } else {
            Some(Letter::rule_ref(index - plain).toggled())
        }
    }

    /// Inverse of [`rule_letter`](Self::rule_letter).
    pub fn rule_for_letter(&self, letter: &Letter) -> Option<usize> {
        let k = letter.as_rule_ref()?;
        let plain = self.plain_rule_count()?;
        if k >= plain {
            return None;
        }
        let index = if letter.is_overlined() { plain + k } else { k };
        (index < self.system.rules.len()).then_some(index)
    }

    /// Content and marker letters of the encoded alphabet.
    pub fn a_class(&self) -> BTreeSet<Letter> {
        ["a", "b", "L", "R"]
            .into_iter()
            .map(|s| s.parse().expect("fixed spelling"))
            .collect()
    }

    /// State-class letters: machine states plus the phase letter.
    pub fn b_class(&self) -> BTreeSet<Letter> {
        let mut b = self.machine_states.clone();
        b.insert(self.s.clone());
        b
    }

    /// Reads an encoded configuration word `L (a|b)* q (a|b)* R` back into
    /// a machine configuration.
    pub fn decode_configuration(&self, word: &Word, blank: &Letter) -> Option<Configuration> {
        let left_marker: Letter = "L".parse().expect("fixed spelling");
        let right_marker: Letter = "R".parse().expect("fixed spelling");
        if word.len() < 3 || word.first() != Some(&left_marker) || word.last() != Some(&right_marker)
        {
            return None;
        }
        let mut states = word
            .iter()
            .enumerate()
            .filter(|(_, l)| self.machine_states.contains(l));
        let (p, state) = states.next()?;
        if states.next().is_some() {
            return None;
        }
        let left = self.encoding.decode_tape(&word.sub(1, p))?;
        let right = self.encoding.decode_tape(&word.sub(p + 1, word.len() - 1))?;
        Some(Configuration::canonical(left, state.clone(), right, blank))
    }
}

fn letter(spelling: &str) -> Letter {
    spelling.parse().expect("fixed spelling")
}

/// Simulation rules over the raw (unencoded) alphabet, tagged with roles.
fn tagged_base_rules(tm: &TuringMachine) -> Vec<(Rule, RuleRole)> {
    let lm = letter("L");
    let rm = letter("R");
    let mut out = Vec::new();
    for ((q, b), t) in tm.transitions() {
        let p = &t.next;
        let c = &t.write;
        match t.movement {
            Move::Right => {
                // (aqb, acp) for every tape letter a and for the left marker.
                let contexts = tm.tape_alphabet().iter().chain(std::iter::once(&lm));
                for a in contexts {
                    let lhs = Word::from(vec![a.clone(), q.clone(), b.clone()]);
                    let rhs = Word::from(vec![a.clone(), c.clone(), p.clone()]);
                    out.push((Rule::new(lhs, rhs), RuleRole::Simulate));
                }
            }
            Move::Stay => {
                let lhs = Word::from(vec![q.clone(), b.clone()]);
                let rhs = Word::from(vec![p.clone(), c.clone()]);
                out.push((Rule::new(lhs, rhs), RuleRole::Simulate));
            }
            Move::Left => {
                for a in tm.tape_alphabet() {
                    let lhs = Word::from(vec![a.clone(), q.clone(), b.clone()]);
                    let rhs = Word::from(vec![p.clone(), a.clone(), c.clone()]);
                    out.push((Rule::new(lhs, rhs), RuleRole::Simulate));
                }
                // At the left marker a blank is materialized under the head.
                let lhs = Word::from(vec![lm.clone(), q.clone(), b.clone()]);
                let rhs = Word::from(vec![
                    lm.clone(),
                    p.clone(),
                    tm.blank().clone(),
                    c.clone(),
                ]);
                out.push((Rule::new(lhs, rhs), RuleRole::Simulate));
            }
        }
    }
    let moving: BTreeSet<&Letter> = tm.transitions().keys().map(|(q, _)| q).collect();
    for q in moving {
        if q == tm.halt() {
            continue;
        }
        let lhs = Word::from(vec![q.clone(), rm.clone()]);
        let rhs = Word::from(vec![q.clone(), tm.blank().clone(), rm.clone()]);
        out.push((Rule::new(lhs, rhs), RuleRole::Extend));
    }
    out
}

fn tagged_cancellation(tm: &TuringMachine) -> Vec<(Rule, RuleRole)> {
    let rm = letter("R");
    let halt = tm.halt();
    let mut out = Vec::new();
    for b in tm.tape_alphabet() {
        let lhs = Word::from(vec![halt.clone(), b.clone()]);
        out.push((Rule::new(lhs, Word::single(halt.clone())), RuleRole::Cancel));
    }
    for a in tm.tape_alphabet() {
        let lhs = Word::from(vec![a.clone(), halt.clone(), rm.clone()]);
        let rhs = Word::from(vec![halt.clone(), rm.clone()]);
        out.push((Rule::new(lhs, rhs), RuleRole::Cancel));
    }
    out
}

/// The simulation rules of a machine: one rule per transition and left
/// context for moves that need one, plus blank extension at the right
/// marker.
pub fn build_base_rules(tm: &TuringMachine) -> Vec<Rule> {
    tagged_base_rules(tm).into_iter().map(|(r, _)| r).collect()
}

/// Appends the halting cancellation rules: the right part of the tape is
/// consumed first, then the left part against the right marker.
pub fn add_halting_cancellation(mut rules: Vec<Rule>, tm: &TuringMachine) -> Vec<Rule> {
    rules.extend(tagged_cancellation(tm).into_iter().map(|(r, _)| r));
    rules
}

/// Builds the full two-phase system of a machine: encoded simulation and
/// cancellation rules, their overlined twins, and the four phase rules
/// through the intermediate letter.
pub fn build_reduction(tm: &TuringMachine) -> Result<ReductionSystem, ReductionError> {
    for q in tm.states() {
        let reparsed = Letter::from_spelling(&q.to_string())
            .map_err(|_| ReductionError::ReservedStateSpelling(q.clone()))?;
        if reparsed.role() != Role::State {
            return Err(ReductionError::ReservedStateSpelling(q.clone()));
        }
    }
    for b in tm.tape_alphabet() {
        if let Ok(reparsed) = Letter::from_spelling(&b.to_string()) {
            if reparsed.role() == Role::Marker {
                return Err(ReductionError::ReservedTapeSpelling(b.clone()));
            }
        }
    }

    let encoding = EncodingMap::for_machine(tm);
    let s = letter("s");
    let lm = letter("L");
    let rm = letter("R");

    let mut w0 = Word::single(lm.clone());
    w0.push(tm.initial().clone());
    w0 = w0.concat(encoding.code(tm.blank()).expect("blank is encoded"));
    w0.push(rm.clone());

    let u_halt = Word::from(vec![lm, tm.halt().clone(), rm]);

    let mut plain: Vec<(Rule, RuleRole)> = tagged_base_rules(tm)
        .into_iter()
        .chain(tagged_cancellation(tm))
        .map(|(r, role)| {
            let rule = Rule::new(encoding.encode_mixed(&r.lhs), encoding.encode_mixed(&r.rhs));
            (rule, role)
        })
        .collect();
    plain.push((
        Rule::new(u_halt.clone(), Word::single(s.clone())),
        RuleRole::HaltToS,
    ));
    plain.push((
        Rule::new(Word::single(s.clone()), w0.toggled_overline()),
        RuleRole::SToStart,
    ));

    let mut rules = Vec::with_capacity(plain.len() * 2);
    let mut roles = Vec::with_capacity(plain.len() * 2);
    for (rule, _) in &plain {
        rules.push(rule.clone());
    }
    for (_, role) in &plain {
        roles.push(*role);
    }
    for (rule, role) in &plain {
        rules.push(rule.toggled_overline());
        roles.push(role.toggled());
    }

    let system = SemiThueSystem::new(rules)?;
    Ok(ReductionSystem {
        system,
        w0,
        u_halt,
        s,
        roles,
        encoding,
        machine_states: tm.states().clone(),
    })
}

/// Structural validation report for a [`ReductionSystem`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// The system alphabet splits into disjoint content/marker, state, and
    /// phase parts, plain and overlined.
    pub disjoint_alphabets: CheckOutcome,
    /// Rule shape, overline twins, unique application, phase switching.
    pub determinism: DeterminismReport,
    /// The four phase rules exist, are unique, and rewrite exactly the
    /// anchor words.
    pub phase_rules: CheckOutcome,
    /// The start word differs from the halting word.
    pub distinct_anchors: CheckOutcome,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.disjoint_alphabets.passed
            && self.determinism.passed()
            && self.phase_rules.passed
            && self.distinct_anchors.passed
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "disjoint alphabets:   {}", self.disjoint_alphabets)?;
        writeln!(f, "rule shape:           {}", self.determinism.shape)?;
        writeln!(f, "overline twins:       {}", self.determinism.twins)?;
        writeln!(f, "unique application:   {}", self.determinism.uniqueness)?;
        writeln!(f, "phase switching:      {}", self.determinism.phase)?;
        writeln!(f, "phase rule anchors:   {}", self.phase_rules)?;
        write!(f, "distinct anchors:     {}", self.distinct_anchors)
    }
}

fn check_disjoint_alphabets(r: &ReductionSystem) -> CheckOutcome {
    let mut violations = Vec::new();
    let a_spellings: BTreeSet<String> = r.a_class().iter().map(Letter::to_string).collect();
    let s_spelling = r.s.to_string();
    let mut state_spellings = BTreeSet::new();
    for q in &r.machine_states {
        let sp = q.to_string();
        if a_spellings.contains(&sp) {
            violations.push(format!("state {q} collides with a content or marker letter"));
        }
        if sp == s_spelling {
            violations.push(format!("state {q} collides with the phase letter"));
        }
        if !state_spellings.insert(sp) {
            violations.push(format!("state spelling {q} is not unique"));
        }
    }
    let allowed: BTreeSet<Letter> = r
        .a_class()
        .into_iter()
        .chain(r.b_class())
        .flat_map(|l| [l.clone(), l.toggled()])
        .collect();
    for l in &r.system.alphabet {
        if !allowed.contains(l) {
            violations.push(format!("alphabet letter {l} is outside the expected classes"));
        }
    }
    CheckOutcome::from_violations(violations)
}

fn check_phase_rules(r: &ReductionSystem) -> CheckOutcome {
    let mut violations = Vec::new();
    let expected = [
        (
            RuleRole::HaltToS,
            Rule::new(r.u_halt.clone(), Word::single(r.s.clone())),
        ),
        (
            RuleRole::SToStart,
            Rule::new(Word::single(r.s.clone()), r.w0.toggled_overline()),
        ),
        (
            RuleRole::OvHaltToS,
            Rule::new(r.u_halt.toggled_overline(), Word::single(r.s.toggled())),
        ),
        (
            RuleRole::OvSToStart,
            Rule::new(Word::single(r.s.toggled()), r.w0.clone()),
        ),
    ];
    for (role, rule) in expected {
        let indices: Vec<usize> = r
            .roles
            .iter()
            .enumerate()
            .filter(|(_, x)| **x == role)
            .map(|(i, _)| i)
            .collect();
        match indices.as_slice() {
            [i] => {
                match r.system.rules.get(*i) {
                    Some(actual) if *actual == rule => {}
                    _ => violations.push(format!(
                        "rule {i} with role {role} is not the expected \"{rule}\""
                    )),
                }
            }
            other => violations.push(format!(
                "expected exactly one rule with role {role}, found indices {other:?}"
            )),
        }
    }
    if r.roles.len() != r.system.rules.len() {
        violations.push(format!(
            "role table covers {} rules but the system has {}",
            r.roles.len(),
            r.system.rules.len()
        ));
    }
    CheckOutcome::from_violations(violations)
}

/// Checks the structural properties the correspondence encoding needs:
/// disjoint alphabets, the four determinism conditions, well-formed phase
/// rules, and distinct anchor words.
pub fn validate_reduction(r: &ReductionSystem) -> ValidationReport {
    let distinct = if r.w0 == r.u_halt {
        CheckOutcome::from_violations(vec![format!(
            "start word and halting word coincide: {}",
            r.w0
        )])
    } else {
        CheckOutcome::pass()
    };
    ValidationReport {
        disjoint_alphabets: check_disjoint_alphabets(r),
        determinism: check_class_determinism(&r.system, &r.a_class(), &r.b_class()),
        phase_rules: check_phase_rules(r),
        distinct_anchors: distinct,
    }
}

/// Replays a bounded machine run against the rewriting orbit from the
/// start word: every simulate step must land on the encoding of the next
/// machine configuration, extension steps must preserve it, and the
/// cancellation phase may begin exactly when the machine has halted.
pub fn bisimulate(
    tm: &TuringMachine,
    r: &ReductionSystem,
    max_steps: usize,
) -> Result<bool, OrbitError> {
    let (trace, status) = tm.run_bounded(&Word::new(), max_steps);
    let halted_in_halt_state = status == Status::Halted
        && trace.last().map(Configuration::state) == Some(tm.halt());

    let mut word = r.w0.clone();
    if r.decode_configuration(&word, tm.blank()).as_ref() != trace.first() {
        return Ok(false);
    }
    let mut i = 0;
    let budget = 2 * max_steps + 4;
    for steps in 0..budget {
        let mut successors = r.system.successors(&word);
        let (step, next) = match successors.len() {
            0 => {
                // A dead end is faithful exactly when the machine got stuck
                // outside the halt state at the same point.
                return Ok(status == Status::Halted
                    && !halted_in_halt_state
                    && i + 1 == trace.len());
            }
            1 => successors.pop().expect("one successor"),
            count => {
                return Err(OrbitError::Branching {
                    word,
                    count,
                    steps,
                })
            }
        };
        match r.roles.get(step.rule).copied() {
            Some(RuleRole::Simulate) => {
                if i + 1 == trace.len() {
                    // The machine run was cut off by the bound; the orbit
                    // may only continue past it if the machine was still
                    // running.
                    return Ok(status == Status::Running);
                }
                i += 1;
                if r.decode_configuration(&next, tm.blank()).as_ref() != Some(&trace[i]) {
                    return Ok(false);
                }
            }
            Some(RuleRole::Extend) => {
                if r.decode_configuration(&next, tm.blank()).as_ref() != Some(&trace[i]) {
                    return Ok(false);
                }
            }
            Some(RuleRole::Cancel) | Some(RuleRole::HaltToS) => {
                return Ok(halted_in_halt_state && i + 1 == trace.len());
            }
            _ => return Ok(false),
        }
        word = next;
    }
    Ok(status == Status::Running && i + 1 == trace.len())
}
