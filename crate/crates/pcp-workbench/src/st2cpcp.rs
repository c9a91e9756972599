//! From rewriting systems to conjugate-correspondence instances.
//!
//! [`build_instance`] instantiates the thirteen-row image table of a
//! [`ReductionSystem`]: the anchor letter I, subscripted content and marker
//! letters, one row per rewriting rule, the separator #, and overlined
//! copies of all of these. [`encode_derivation`] turns a circular
//! derivation into a word whose two images are conjugates, and
//! [`decode_solution`] validates such a word and reconstructs the
//! derivation.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::rewriting::{DerivationStep, DerivationTrace, RewriteError};
use crate::tm2st::{ReductionSystem, RuleRole};
use crate::wordcore::{
    left_desync, right_desync, Letter, LetterError, Morphism, MorphismError, Subscript, Word,
};

/// A conjugate-correspondence instance: two morphisms over a shared domain,
/// the domain listed in table row order, and an optional back-reference to
/// the system it was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CpcpInstance {
    pub h: Morphism,
    pub g: Morphism,
    /// Domain letters in the fixed table row order used for serialization.
    pub rows: Vec<Letter>,
    pub reduction: Option<Box<ReductionSystem>>,
}

impl CpcpInstance {
    pub fn domain(&self) -> &BTreeSet<Letter> {
        self.h.domain()
    }

    pub fn codomain(&self) -> &BTreeSet<Letter> {
        self.h.codomain()
    }
}

/// One parsed segment of a solution word: context letters with subscript 1,
/// a rule letter, context letters with subscript 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationBlock {
    pub alpha: Word,
    pub rule_letter: Letter,
    pub beta: Word,
    pub overlined: bool,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("the reduction system is missing one of its four phase rules")]
    MissingPhaseRules,
    #[error("rule {0} has a side too short for its image row")]
    BadRuleImage(usize),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Letter(#[from] LetterError),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("the instance carries no reduction system to encode against")]
    MissingReduction,
    #[error("the trace is not circular")]
    NotCircular,
    #[error("the trace does not start at the start word")]
    StartMismatch,
    #[error("the trace does not replay in the system")]
    DoesNotReplay,
    #[error("step {step} with role {role:?} breaks the two-phase structure")]
    PhaseStructure { step: usize, role: Option<RuleRole> },
    #[error("step {step}: the context around the rewrite is not a configuration context")]
    BadContext { step: usize },
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("the instance carries no reduction system to decode against")]
    MissingReduction,
    #[error("the word is empty")]
    Empty,
    #[error("no phase switch: the halting and restart rule letters never appear adjacently")]
    NoPhaseSwitch,
    #[error("no anchor: the word admits no unique rotation to a leading I")]
    NoAnchor,
    #[error("position {position}: {message}")]
    Malformed { position: usize, message: String },
    #[error("block {block}: {message}")]
    Inconsistent { block: usize, message: String },
}

fn letter(spelling: &str) -> Letter {
    spelling.parse().expect("fixed spelling")
}

fn strip_overlines(word: &Word) -> Word {
    word.iter()
        .map(|l| if l.is_overlined() { l.toggled() } else { l.clone() })
        .collect()
}

/// Instantiates the thirteen-row image table for a reduction system.
///
/// The subscripted letter rows range over a, b, L, R; rule rows use each
/// rule's sides with overlines stripped (the phase is carried entirely by
/// the d-versus-e desynchronizers); the four phase rules receive their own
/// anchor rows.
pub fn build_instance(r: &ReductionSystem) -> Result<CpcpInstance, InstanceError> {
    let i_halt = r
        .role_index(RuleRole::HaltToS)
        .ok_or(InstanceError::MissingPhaseRules)?;
    let i_start = r
        .role_index(RuleRole::SToStart)
        .ok_or(InstanceError::MissingPhaseRules)?;
    let i_ov_halt = r
        .role_index(RuleRole::OvHaltToS)
        .ok_or(InstanceError::MissingPhaseRules)?;
    let i_ov_start = r
        .role_index(RuleRole::OvSToStart)
        .ok_or(InstanceError::MissingPhaseRules)?;
    let plain = r.plain_rule_count().ok_or(InstanceError::MissingPhaseRules)?;

    let d = letter("d");
    let e = letter("e");
    let f = letter("f");
    let dollar = letter("$");
    let pound = letter("£");
    let hash = letter("#");
    let anchor = letter("I");

    let mut codomain: BTreeSet<Letter> = ["a", "b", "L", "R", "d", "e", "f", "#", "$", "£"]
        .into_iter()
        .map(letter)
        .collect();
    codomain.extend(r.machine_states.iter().cloned());
    codomain.insert(r.s.clone());

    let dd = Word::from(vec![d.clone(), d.clone()]);
    let ee = Word::from(vec![e.clone(), e.clone()]);
    let l_dd = left_desync(&dd, &codomain);
    let l_ee = left_desync(&ee, &codomain);
    let r_ee = right_desync(&ee, &codomain);
    let r_dd = right_desync(&dd, &codomain);

    let mut w0_hash = r.w0.clone();
    w0_hash.push(hash.clone());
    let mut u_hash = r.u_halt.clone();
    u_hash.push(hash.clone());

    let apply = |m: &Morphism, w: &Word| m.apply(w).map_err(InstanceError::from);

    let mut rows: Vec<(Letter, Word, Word)> = Vec::new();

    // Row I: the left anchor.
    let mut h_i = Word::single(dollar.clone());
    h_i = h_i.concat(&apply(&l_dd, &w0_hash)?);
    h_i.push(d.clone());
    let g_i = Word::from(vec![pound.clone(), e.clone(), e.clone()]);
    rows.push((anchor.clone(), h_i, g_i));

    // Rows x1 and x2 over the content and marker letters.
    let xs: Vec<Letter> = ["a", "b", "L", "R"].into_iter().map(letter).collect();
    for x in &xs {
        let x1 = x.with_subscript(Subscript::One)?;
        let h_img = Word::from(vec![d.clone(), x.clone(), d.clone()]);
        let g_img = Word::from(vec![x.clone(), e.clone(), e.clone()]);
        rows.push((x1, h_img, g_img));
    }
    for x in &xs {
        let x2 = x.with_subscript(Subscript::Two)?;
        let h_img = Word::from(vec![d.clone(), d.clone(), x.clone()]);
        let g_img = Word::from(vec![x.clone(), e.clone(), e.clone()]);
        rows.push((x2, h_img, g_img));
    }

    // One row per plain non-phase rule: h strips one leading d from the
    // doubled left desynchronization, g doubles on the right.
    for (i, rule) in r.system.rules.iter().enumerate().take(plain) {
        if i == i_halt || i == i_start {
            continue;
        }
        let t = r.rule_letter(i).ok_or(InstanceError::MissingPhaseRules)?;
        let v = strip_overlines(&rule.rhs);
        let u = strip_overlines(&rule.lhs);
        let h_img = apply(&l_dd, &v)?
            .strip_prefix(&Word::single(d.clone()))
            .ok_or(InstanceError::BadRuleImage(i))?;
        let g_img = apply(&r_ee, &u)?;
        rows.push((t, h_img, g_img));
    }

    // The halting rule row.
    let t_halt = r.rule_letter(i_halt).ok_or(InstanceError::MissingPhaseRules)?;
    let h_img = Word::from(vec![d.clone(), r.s.clone(), f.clone(), f.clone()]);
    let g_img = apply(&r_ee, &u_hash)?;
    rows.push((t_halt, h_img, g_img));

    // The restart rule row.
    let t_start = r.rule_letter(i_start).ok_or(InstanceError::MissingPhaseRules)?;
    let mut h_img = Word::from(vec![f.clone(), dollar.clone(), pound.clone()]);
    h_img = h_img.concat(&apply(&l_ee, &w0_hash)?);
    h_img.push(e.clone());
    h_img.push(e.clone());
    let g_img = Word::from(vec![
        r.s.clone(),
        f.clone(),
        f.clone(),
        f.clone(),
        pound.clone(),
        dollar.clone(),
        d.clone(),
        d.clone(),
    ]);
    rows.push((t_start, h_img, g_img));

    // The separator row.
    let h_img = Word::from(vec![d.clone(), d.clone(), hash.clone(), d.clone()]);
    let g_img = Word::from(vec![hash.clone(), e.clone(), e.clone()]);
    rows.push((hash.clone(), h_img, g_img));

    // Overlined letter rows.
    for x in &xs {
        let x1 = x.with_subscript(Subscript::One)?.toggled();
        let h_img = Word::from(vec![x.clone(), e.clone(), e.clone()]);
        let g_img = Word::from(vec![x.clone(), d.clone(), d.clone()]);
        rows.push((x1, h_img, g_img));
    }
    for x in &xs {
        let x2 = x.with_subscript(Subscript::Two)?.toggled();
        let h_img = Word::from(vec![e.clone(), x.clone(), e.clone()]);
        let g_img = Word::from(vec![x.clone(), d.clone(), d.clone()]);
        rows.push((x2, h_img, g_img));
    }

    // Overlined rule rows.
    for (i, rule) in r.system.rules.iter().enumerate().skip(plain) {
        if i == i_ov_halt || i == i_ov_start {
            continue;
        }
        let t = r.rule_letter(i).ok_or(InstanceError::MissingPhaseRules)?;
        let v = strip_overlines(&rule.rhs);
        let u = strip_overlines(&rule.lhs);
        let mut h_img = apply(&l_ee, &v)?
            .strip_prefix(&ee)
            .ok_or(InstanceError::BadRuleImage(i))?;
        h_img.push(e.clone());
        let g_img = apply(&r_dd, &u)?;
        rows.push((t, h_img, g_img));
    }

    // The overlined halting rule row.
    let t = r
        .rule_letter(i_ov_halt)
        .ok_or(InstanceError::MissingPhaseRules)?;
    let h_img = Word::from(vec![r.s.clone(), f.clone()]);
    let g_img = apply(&r_dd, &u_hash)?;
    rows.push((t, h_img, g_img));

    // The overlined restart rule row.
    let t = r
        .rule_letter(i_ov_start)
        .ok_or(InstanceError::MissingPhaseRules)?;
    let h_img = Word::from(vec![f.clone(), f.clone(), pound.clone()]);
    let g_img = Word::from(vec![
        r.s.clone(),
        f.clone(),
        f.clone(),
        f.clone(),
        dollar.clone(),
    ]);
    rows.push((t, h_img, g_img));

    // The overlined separator row.
    let h_img = Word::from(vec![e.clone(), hash.clone(), e.clone(), e.clone()]);
    let g_img = Word::from(vec![hash.clone(), d.clone(), d.clone()]);
    rows.push((hash.toggled(), h_img, g_img));

    let h_images = rows.iter().map(|(l, h, _)| (l.clone(), h.clone())).collect();
    let g_images = rows.iter().map(|(l, _, g)| (l.clone(), g.clone())).collect();
    let h = Morphism::with_codomain(h_images, codomain.clone())?;
    let g = Morphism::with_codomain(g_images, codomain)?;
    Ok(CpcpInstance {
        h,
        g,
        rows: rows.into_iter().map(|(l, _, _)| l).collect(),
        reduction: Some(Box::new(r.clone())),
    })
}

fn block_word(
    source: &Word,
    step: &DerivationStep,
    lhs_len: usize,
    rule_letter: Letter,
    step_index: usize,
) -> Result<Word, EncodeError> {
    let bad = |_| EncodeError::BadContext { step: step_index };
    let alpha = source
        .sub(0, step.position)
        .with_subscript(Subscript::One)
        .map_err(bad)?;
    let beta = source
        .sub(step.position + lhs_len, source.len())
        .with_subscript(Subscript::Two)
        .map_err(bad)?;
    let mut out = alpha;
    out.push(rule_letter);
    Ok(out.concat(&beta))
}

/// Encodes a circular derivation as a solution word: the anchor I, one
/// block per rewriting step with separators, the two phase rule letters,
/// and the overlined copy of the same sequence.
pub fn encode_derivation(
    inst: &CpcpInstance,
    trace: &DerivationTrace,
) -> Result<Word, EncodeError> {
    let r = inst.reduction.as_deref().ok_or(EncodeError::MissingReduction)?;
    if !trace.is_circular() {
        return Err(EncodeError::NotCircular);
    }
    if trace.start != r.w0 {
        return Err(EncodeError::StartMismatch);
    }
    if !trace.replays(&r.system) {
        return Err(EncodeError::DoesNotReplay);
    }

    let hash = letter("#");
    let sources: Vec<&Word> = trace.words().take(trace.len()).collect();

    let mut out = Word::single(letter("I"));
    let mut phase = 0usize; // 0: plain blocks, 1: overlined blocks, 2: done
    let mut i = 0usize;
    while i < trace.steps.len() {
        let (step, _) = &trace.steps[i];
        let role = r.roles.get(step.rule).copied();
        let structure_error = EncodeError::PhaseStructure { step: i, role };
        let (block_roles, halt_role, start_role, separator) = match phase {
            0 => (
                [RuleRole::Simulate, RuleRole::Extend, RuleRole::Cancel],
                RuleRole::HaltToS,
                RuleRole::SToStart,
                hash.clone(),
            ),
            _ => (
                [RuleRole::OvSimulate, RuleRole::OvExtend, RuleRole::OvCancel],
                RuleRole::OvHaltToS,
                RuleRole::OvSToStart,
                hash.toggled(),
            ),
        };
        match role {
            Some(role) if block_roles.contains(&role) => {
                if phase >= 2 {
                    return Err(structure_error);
                }
                let lhs_len = r.system.rules[step.rule].lhs.len();
                let t = r
                    .rule_letter(step.rule)
                    .ok_or_else(|| structure_error.clone())?;
                let block = block_word(sources[i], step, lhs_len, t, i)?;
                out = out.concat(&block);
                out.push(separator);
                i += 1;
            }
            Some(role) if role == halt_role => {
                let next_role = trace
                    .steps
                    .get(i + 1)
                    .and_then(|(s, _)| r.roles.get(s.rule))
                    .copied();
                if next_role != Some(start_role) {
                    return Err(EncodeError::PhaseStructure {
                        step: i + 1,
                        role: next_role,
                    });
                }
                let t_halt = r
                    .rule_letter(trace.steps[i].0.rule)
                    .ok_or_else(|| structure_error.clone())?;
                let t_start = r
                    .rule_letter(trace.steps[i + 1].0.rule)
                    .ok_or_else(|| structure_error.clone())?;
                out.push(t_halt);
                out.push(t_start);
                i += 2;
                phase += 1;
            }
            _ => return Err(structure_error),
        }
    }
    if phase != 2 {
        return Err(EncodeError::PhaseStructure {
            step: trace.steps.len(),
            role: None,
        });
    }
    Ok(out)
}

/// Rotates a solution word so that it starts at the anchor I following the
/// overlined restart letter.
pub fn rotate_to_canonical(inst: &CpcpInstance, w: &Word) -> Result<Word, DecodeError> {
    let r = inst.reduction.as_deref().ok_or(DecodeError::MissingReduction)?;
    if w.is_empty() {
        return Err(DecodeError::Empty);
    }
    let anchor = letter("I");
    let ov_start = r
        .role_index(RuleRole::OvSToStart)
        .and_then(|i| r.rule_letter(i))
        .ok_or(DecodeError::NoAnchor)?;
    let n = w.len();
    let anchors: Vec<usize> = (0..n).filter(|&p| w[p] == anchor).collect();
    let after_restart: Vec<usize> = anchors
        .iter()
        .copied()
        .filter(|&p| w[(p + n - 1) % n] == ov_start)
        .collect();
    let p = match (after_restart.as_slice(), anchors.as_slice()) {
        ([p], _) => *p,
        (_, [p]) => *p,
        _ => return Err(DecodeError::NoAnchor),
    };
    Ok(w.rotated_left(p))
}

struct BlockParser<'a> {
    word: &'a Word,
    pos: usize,
}

impl<'a> BlockParser<'a> {
    fn malformed(&self, message: impl Into<String>) -> DecodeError {
        DecodeError::Malformed {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&'a Letter> {
        self.word.get(self.pos)
    }

    /// Parses `alpha t beta` where alpha carries subscript 1 and beta
    /// subscript 2; the rule letter must be overlined per `overlined`.
    fn block(&mut self, overlined: bool) -> Result<DerivationBlock, DecodeError> {
        let mut alpha = Word::new();
        while let Some(l) = self.peek() {
            if l.subscript() == Some(Subscript::One) {
                alpha.push(l.clone());
                self.pos += 1;
            } else {
                break;
            }
        }
        let rule_letter = match self.peek() {
            Some(l) if l.as_rule_ref().is_some() && l.is_overlined() == overlined => {
                self.pos += 1;
                l.clone()
            }
            Some(l) => return Err(self.malformed(format!("expected a rule letter, found {l}"))),
            None => return Err(self.malformed("expected a rule letter, found the end")),
        };
        let mut beta = Word::new();
        while let Some(l) = self.peek() {
            if l.subscript() == Some(Subscript::Two) {
                beta.push(l.clone());
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(DerivationBlock {
            alpha,
            rule_letter,
            beta,
            overlined,
        })
    }
}

/// Validates a solution word and reconstructs the circular derivation it
/// encodes: rotate to the anchor, parse blocks, rebuild each source word,
/// and check that consecutive sources are one rewriting step apart, with
/// the phase rules linking the halves.
pub fn decode_solution(inst: &CpcpInstance, w: &Word) -> Result<DerivationTrace, DecodeError> {
    let r = inst.reduction.as_deref().ok_or(DecodeError::MissingReduction)?;
    if w.is_empty() {
        return Err(DecodeError::Empty);
    }
    let halt_letter = r
        .role_index(RuleRole::HaltToS)
        .and_then(|i| r.rule_letter(i))
        .ok_or(DecodeError::NoPhaseSwitch)?;
    let start_letter = r
        .role_index(RuleRole::SToStart)
        .and_then(|i| r.rule_letter(i))
        .ok_or(DecodeError::NoPhaseSwitch)?;
    let n = w.len();
    if !(0..n).any(|i| w[i] == halt_letter && w[(i + 1) % n] == start_letter) {
        return Err(DecodeError::NoPhaseSwitch);
    }

    let w = rotate_to_canonical(inst, w)?;
    let mut parser = BlockParser { word: &w, pos: 0 };
    if parser.peek() != Some(&letter("I")) {
        return Err(parser.malformed("expected the leading anchor I"));
    }
    parser.pos += 1;

    // Parse the two halves symmetrically.
    let mut blocks: Vec<DerivationBlock> = Vec::new();
    for overlined in [false, true] {
        let (halt, start, separator) = if overlined {
            (halt_letter.toggled(), start_letter.toggled(), letter("#").toggled())
        } else {
            (halt_letter.clone(), start_letter.clone(), letter("#"))
        };
        loop {
            if parser.peek() == Some(&halt) {
                parser.pos += 1;
                if parser.peek() != Some(&start) {
                    return Err(parser.malformed("expected the restart letter after halting"));
                }
                parser.pos += 1;
                break;
            }
            if parser.peek().is_none() {
                return Err(parser.malformed("expected a block or the phase pair, found the end"));
            }
            let block = parser.block(overlined)?;
            if parser.peek() != Some(&separator) {
                return Err(parser.malformed("expected the separator after a block"));
            }
            parser.pos += 1;
            blocks.push(block);
        }
        if !overlined && blocks.is_empty() {
            return Err(parser.malformed("no blocks before the phase pair"));
        }
    }
    if parser.pos != w.len() {
        return Err(parser.malformed("trailing letters after the overlined phase pair"));
    }

    // Rebuild the sources and replay the derivation.
    let plain_count = blocks.iter().filter(|b| !b.overlined).count();
    let mut steps: Vec<(usize, DerivationStep, Word)> = Vec::new();
    for (k, block) in blocks.iter().enumerate() {
        let index = r
            .rule_for_letter(&block.rule_letter)
            .ok_or_else(|| DecodeError::Inconsistent {
                block: k,
                message: format!("rule letter {} matches no rule", block.rule_letter),
            })?;
        let source = block
            .alpha
            .without_subscripts()
            .concat(&r.system.rules[index].lhs)
            .concat(&block.beta.without_subscripts());
        let step = DerivationStep {
            rule: index,
            position: block.alpha.len(),
        };
        steps.push((k, step, source));
    }

    let inconsistent = |block: usize, message: String| DecodeError::Inconsistent { block, message };
    if steps[0].2 != r.w0 {
        return Err(inconsistent(
            0,
            format!("the first source {} is not the start word", steps[0].2),
        ));
    }

    let phase_step = |role: RuleRole| -> Result<DerivationStep, DecodeError> {
        let rule = r.role_index(role).ok_or(DecodeError::NoPhaseSwitch)?;
        Ok(DerivationStep { rule, position: 0 })
    };
    let rewrite = |source: &Word, step: &DerivationStep, block: usize| {
        r.system
            .rewrite_at(source, step)
            .map_err(|e: RewriteError| inconsistent(block, e.to_string()))
    };

    let mut trace = DerivationTrace::new(r.w0.clone());
    let mut current = r.w0.clone();
    for (k, step, source) in &steps {
        if *source != current {
            return Err(inconsistent(
                *k,
                format!("block source {source} does not continue the derivation"),
            ));
        }
        current = rewrite(source, step, *k)?;
        trace.steps.push((*step, current.clone()));
        let mut phase_roles = Vec::new();
        if *k + 1 == plain_count {
            phase_roles.extend([RuleRole::HaltToS, RuleRole::SToStart]);
        }
        if *k + 1 == steps.len() {
            phase_roles.extend([RuleRole::OvHaltToS, RuleRole::OvSToStart]);
        }
        for role in phase_roles {
            let step = phase_step(role)?;
            current = rewrite(&current, &step, *k)?;
            trace.steps.push((step, current.clone()));
        }
    }
    if !trace.is_circular() {
        return Err(inconsistent(
            blocks.len().saturating_sub(1),
            "the reconstructed derivation does not return to the start word".into(),
        ));
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{Move, Transition, TuringMachine};
    use crate::rewriting::find_circular;
    use crate::tm2st::build_reduction;
    use crate::wordcore::{conjugacy_splits, is_conjugate};

    fn h1() -> TuringMachine {
        TuringMachine::new(
            [letter("q0"), letter("H")],
            [],
            [letter("_")],
            letter("_"),
            letter("q0"),
            letter("H"),
            [(
                letter("q0"),
                letter("_"),
                Transition {
                    next: letter("H"),
                    write: letter("_"),
                    movement: Move::Stay,
                },
            )],
        )
        .unwrap()
    }

    fn writer() -> TuringMachine {
        TuringMachine::new(
            [letter("q0"), letter("q1"), letter("H")],
            [],
            [letter("_"), letter("a"), letter("b")],
            letter("_"),
            letter("q0"),
            letter("H"),
            [
                (
                    letter("q0"),
                    letter("_"),
                    Transition {
                        next: letter("q1"),
                        write: letter("a"),
                        movement: Move::Right,
                    },
                ),
                (
                    letter("q1"),
                    letter("_"),
                    Transition {
                        next: letter("H"),
                        write: letter("b"),
                        movement: Move::Stay,
                    },
                ),
            ],
        )
        .unwrap()
    }

    fn h1_instance() -> CpcpInstance {
        build_instance(&build_reduction(&h1()).unwrap()).unwrap()
    }

    fn img(m: &Morphism, spelling: &str) -> String {
        m.image(&letter(spelling)).unwrap().to_string()
    }

    #[test]
    fn table_rows_match_the_fixed_images() {
        let inst = h1_instance();
        let (h, g) = (&inst.h, &inst.g);

        assert_eq!(img(h, "I"), "$ d d L d d q0 d d a d d R d d # d");
        assert_eq!(img(g, "I"), "£ e e");
        assert_eq!(img(h, "a_1"), "d a d");
        assert_eq!(img(g, "a_1"), "a e e");
        assert_eq!(img(h, "L_2"), "d d L");
        assert_eq!(img(g, "L_2"), "L e e");
        assert_eq!(img(h, "#"), "d d # d");
        assert_eq!(img(g, "#"), "# e e");

        // Rule rows: t0 = (q0 a, H a).
        assert_eq!(img(h, "t0"), "d H d d a");
        assert_eq!(img(g, "t0"), "q0 e e a e e");

        // Phase rows.
        assert_eq!(img(h, "t4"), "d s f f");
        assert_eq!(img(g, "t4"), "L e e H e e R e e # e e");
        assert_eq!(img(h, "t5"), "f $ £ e e L e e q0 e e a e e R e e # e e");
        assert_eq!(img(g, "t5"), "s f f f £ $ d d");

        // Overlined rows.
        assert_eq!(img(h, "~a_1"), "a e e");
        assert_eq!(img(g, "~a_1"), "a d d");
        assert_eq!(img(h, "~a_2"), "e a e");
        assert_eq!(img(g, "~a_2"), "a d d");
        assert_eq!(img(h, "~t0"), "H e e a e");
        assert_eq!(img(g, "~t0"), "q0 d d a d d");
        assert_eq!(img(h, "~t4"), "s f");
        assert_eq!(img(g, "~t4"), "L d d H d d R d d # d d");
        assert_eq!(img(h, "~t5"), "f f £");
        assert_eq!(img(g, "~t5"), "s f f f $");
        assert_eq!(img(h, "~#"), "e # e e");
        assert_eq!(img(g, "~#"), "# d d");

        // 1 anchor + 16 letter rows + 8 rule rows + 4 phase rows + 2 separators.
        assert_eq!(inst.rows.len(), 31);
    }

    #[test]
    fn encoding_the_eight_step_cycle() {
        let inst = h1_instance();
        let r = inst.reduction.as_deref().unwrap();
        let trace = find_circular(&r.system, &r.w0, 20).unwrap();
        let w = encode_derivation(&inst, &trace).unwrap();
        assert_eq!(
            w.to_string(),
            "I L_1 t0 R_2 # L_1 t2 R_2 # t4 t5 \
             ~L_1 ~t0 ~R_2 ~# ~L_1 ~t2 ~R_2 ~# ~t4 ~t5"
        );
    }

    #[test]
    fn images_of_the_encoded_cycle_are_conjugates_split_at_anchors() {
        let inst = h1_instance();
        let r = inst.reduction.as_deref().unwrap();
        let trace = find_circular(&r.system, &r.w0, 20).unwrap();
        let w = encode_derivation(&inst, &trace).unwrap();
        let hw = inst.h.apply(&w).unwrap();
        let gw = inst.g.apply(&w).unwrap();
        let split = is_conjugate(&hw, &gw).expect("images must be conjugate");
        assert!(!split.u.is_empty() && !split.v.is_empty());
        for split in conjugacy_splits(&hw, &gw) {
            let k = split.u.len();
            if k == 0 || k == hw.len() {
                continue;
            }
            let boundary = &hw[k];
            assert!(
                boundary == &letter("$") || boundary == &letter("£"),
                "split at {k} lands on {boundary}"
            );
        }
    }

    #[test]
    fn decode_inverts_encode() {
        for tm in [h1(), writer()] {
            let r = build_reduction(&tm).unwrap();
            let inst = build_instance(&r).unwrap();
            let trace = find_circular(&r.system, &r.w0, 60).unwrap();
            let w = encode_derivation(&inst, &trace).unwrap();
            let decoded = decode_solution(&inst, &w).unwrap();
            assert_eq!(decoded, trace);
        }
    }

    #[test]
    fn rotations_decode_to_the_same_trace() {
        let inst = h1_instance();
        let r = inst.reduction.as_deref().unwrap();
        let trace = find_circular(&r.system, &r.w0, 20).unwrap();
        let w = encode_derivation(&inst, &trace).unwrap();
        for k in 0..w.len() {
            let rotated = w.rotated_left(k);
            assert_eq!(rotate_to_canonical(&inst, &rotated).unwrap(), w);
            assert_eq!(decode_solution(&inst, &rotated).unwrap(), trace);
        }
    }

    #[test]
    fn structural_decode_errors() {
        let inst = h1_instance();
        let no_switch = Word::parse("I L_1 t0 R_2 #").unwrap();
        assert_eq!(decode_solution(&inst, &no_switch), Err(DecodeError::NoPhaseSwitch));

        let empty = Word::new();
        assert_eq!(decode_solution(&inst, &empty), Err(DecodeError::Empty));

        let no_anchor = Word::parse("t4 t5 ~t4 ~t5").unwrap();
        assert_eq!(decode_solution(&inst, &no_anchor), Err(DecodeError::NoAnchor));

        // A phase switch with garbage blocks fails block parsing.
        let garbage = Word::parse("I a_1 t4 t5 ~t4 ~t5").unwrap();
        assert!(matches!(
            decode_solution(&inst, &garbage),
            Err(DecodeError::Malformed { .. })
        ));

        // Structurally fine but derivationally wrong: block source is not w0.
        let wrong = Word::parse("I a_1 t0 R_2 # t4 t5 ~t4 ~t5").unwrap();
        assert!(matches!(
            decode_solution(&inst, &wrong),
            Err(DecodeError::Inconsistent { .. })
        ));
    }

    #[test]
    fn encode_rejects_degenerate_traces() {
        let inst = h1_instance();
        let r = inst.reduction.as_deref().unwrap();

        let empty = DerivationTrace::new(r.w0.clone());
        assert_eq!(encode_derivation(&inst, &empty), Err(EncodeError::NotCircular));

        let mut partial = DerivationTrace::new(r.w0.clone());
        let successors = r.system.successors(&r.w0);
        let (step, word) = successors.into_iter().next().unwrap();
        partial.steps.push((step, word));
        assert_eq!(encode_derivation(&inst, &partial), Err(EncodeError::NotCircular));
    }

    #[test]
    fn canonical_rotation_is_idempotent_and_needs_an_anchor() {
        let inst = h1_instance();
        let r = inst.reduction.as_deref().unwrap();
        let trace = find_circular(&r.system, &r.w0, 20).unwrap();
        let w = encode_derivation(&inst, &trace).unwrap();
        assert_eq!(rotate_to_canonical(&inst, &w).unwrap(), w);
        assert_eq!(rotate_to_canonical(&inst, &w.rotated_left(3)).unwrap(), w);
        let no_anchor = Word::parse("t4 t5").unwrap();
        assert_eq!(rotate_to_canonical(&inst, &no_anchor), Err(DecodeError::NoAnchor));
    }
}
