use std::collections::BTreeSet;
use std::fmt;

use super::SemiThueSystem;
use crate::wordcore::{Letter, Role, Word};

/// Result of one structural check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub violations: Vec<String>,
}

impl CheckOutcome {
    pub fn pass() -> Self {
        CheckOutcome {
            passed: true,
            violations: Vec::new(),
        }
    }

    pub fn from_violations(violations: Vec<String>) -> Self {
        CheckOutcome {
            passed: violations.is_empty(),
            violations,
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            write!(f, "pass")
        } else {
            write!(f, "FAIL")?;
            for v in &self.violations {
                write!(f, "\n    - {v}")?;
            }
            Ok(())
        }
    }
}

/// Structural determinism report for a system whose words are meant to stay
/// in the class `(A ∪ Ā)* (B ∪ B̄) (A ∪ Ā)*`.
///
/// - `shape`: every rule side consists of class letters with exactly one
///   state-class letter, uniformly plain or uniformly overlined;
/// - `twins`: every fully plain rule has its fully overlined copy and vice
///   versa;
/// - `uniqueness`: no word of the class admits two distinct (rule, position)
///   applications;
/// - `phase`: exactly one rule crosses from plain to overlined and one
///   crosses back, and both rewrite complete configurations only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminismReport {
    pub shape: CheckOutcome,
    pub twins: CheckOutcome,
    pub uniqueness: CheckOutcome,
    pub phase: CheckOutcome,
}

impl DeterminismReport {
    pub fn passed(&self) -> bool {
        self.shape.passed && self.twins.passed && self.uniqueness.passed && self.phase.passed
    }
}

impl fmt::Display for DeterminismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "  shape:      {}\n  twins:      {}\n  uniqueness: {}\n  phase:      {}",
            self.shape, self.twins, self.uniqueness, self.phase
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SideClass {
    Plain,
    Overlined,
    Bad,
}

struct Classes<'a> {
    a: &'a BTreeSet<Letter>,
    b: &'a BTreeSet<Letter>,
}

impl Classes<'_> {
    fn plain(&self, l: &Letter) -> bool {
        !l.is_overlined() && (self.a.contains(l) || self.b.contains(l))
    }

    fn overlined(&self, l: &Letter) -> bool {
        l.is_overlined() && {
            let t = l.toggled();
            self.a.contains(&t) || self.b.contains(&t)
        }
    }

    fn in_class(&self, l: &Letter) -> bool {
        self.plain(l) || self.overlined(l)
    }

    fn is_state_class(&self, l: &Letter) -> bool {
        if l.is_overlined() {
            self.b.contains(&l.toggled())
        } else {
            self.b.contains(l)
        }
    }

    fn side_class(&self, word: &Word) -> SideClass {
        let states = word.iter().filter(|l| self.is_state_class(l)).count();
        if states != 1 {
            return SideClass::Bad;
        }
        if word.iter().all(|l| self.plain(l)) {
            SideClass::Plain
        } else if word.iter().all(|l| self.overlined(l)) {
            SideClass::Overlined
        } else {
            SideClass::Bad
        }
    }
}

/// Checks the four structural determinism properties of `system` for the
/// word class determined by the plain alphabets `a_class` (content and
/// markers) and `b_class` (states and the phase letter).
pub fn check_class_determinism(
    system: &SemiThueSystem,
    a_class: &BTreeSet<Letter>,
    b_class: &BTreeSet<Letter>,
) -> DeterminismReport {
    let classes = Classes {
        a: a_class,
        b: b_class,
    };
    DeterminismReport {
        shape: check_shape(system, &classes),
        twins: check_twins(system, &classes),
        uniqueness: check_uniqueness(system, &classes),
        phase: check_phase(system, &classes),
    }
}

fn check_shape(system: &SemiThueSystem, classes: &Classes) -> CheckOutcome {
    let mut violations = Vec::new();
    for (i, rule) in system.rules.iter().enumerate() {
        for (name, side) in [("left", &rule.lhs), ("right", &rule.rhs)] {
            if classes.side_class(side) == SideClass::Bad {
                violations.push(format!(
                    "rule {i} ({rule}): {name} side \"{side}\" is not a plain or overlined \
                     one-state configuration"
                ));
            }
        }
    }
    CheckOutcome::from_violations(violations)
}

fn check_twins(system: &SemiThueSystem, classes: &Classes) -> CheckOutcome {
    let mut violations = Vec::new();
    for (i, rule) in system.rules.iter().enumerate() {
        let lhs = classes.side_class(&rule.lhs);
        let rhs = classes.side_class(&rule.rhs);
        let pure = matches!(
            (lhs, rhs),
            (SideClass::Plain, SideClass::Plain) | (SideClass::Overlined, SideClass::Overlined)
        );
        if pure && !system.rules.contains(&rule.toggled_overline()) {
            violations.push(format!("rule {i} ({rule}) has no overline twin"));
        }
    }
    CheckOutcome::from_violations(violations)
}

fn check_uniqueness(system: &SemiThueSystem, classes: &Classes) -> CheckOutcome {
    let mut violations = Vec::new();
    // Left sides that can occur in class words, keyed by the offset of
    // their unique state-class letter.
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for (i, rule) in system.rules.iter().enumerate() {
        if !rule.lhs.iter().all(|l| classes.in_class(l)) {
            continue;
        }
        let state_offsets: Vec<usize> = rule
            .lhs
            .iter()
            .enumerate()
            .filter(|(_, l)| classes.is_state_class(l))
            .map(|(k, _)| k)
            .collect();
        match state_offsets.len() {
            0 => violations.push(format!(
                "rule {i} ({rule}): left side has no state-class letter, so it applies at \
                 more than one position of some class word"
            )),
            1 => candidates.push((i, state_offsets[0])),
            _ => {} // cannot occur in a one-state word; the shape check reports it
        }
    }
    for (x, &(i, ci)) in candidates.iter().enumerate() {
        for &(j, cj) in &candidates[x + 1..] {
            if let Some(word) = overlap(
                &system.rules[i].lhs,
                ci,
                &system.rules[j].lhs,
                cj,
            ) {
                violations.push(format!(
                    "rules {i} ({}) and {j} ({}) both apply to the class word {word}",
                    system.rules[i], system.rules[j]
                ));
            }
        }
    }
    CheckOutcome::from_violations(violations)
}

/// Aligns the state-class letters of two left sides and returns the merged
/// word if the overlap is consistent.
fn overlap(lhs_i: &Word, ci: usize, lhs_j: &Word, cj: usize) -> Option<Word> {
    // Place lhs_i at 0 and lhs_j at shift r, so that ci == r + cj.
    let r = ci as isize - cj as isize;
    let start = r.min(0);
    let end = (lhs_i.len() as isize).max(r + lhs_j.len() as isize);
    let mut merged = Vec::new();
    for pos in start..end {
        let from_i = (pos >= 0 && pos < lhs_i.len() as isize).then(|| &lhs_i[pos as usize]);
        let from_j =
            (pos >= r && pos - r < lhs_j.len() as isize).then(|| &lhs_j[(pos - r) as usize]);
        match (from_i, from_j) {
            (Some(a), Some(b)) if a != b => return None,
            (Some(a), _) => merged.push(a.clone()),
            (None, Some(b)) => merged.push(b.clone()),
            (None, None) => unreachable!("position inside the merged range"),
        }
    }
    Some(Word::from(merged))
}

fn check_phase(system: &SemiThueSystem, classes: &Classes) -> CheckOutcome {
    let mut violations = Vec::new();
    let mut to_overlined = Vec::new();
    let mut to_plain = Vec::new();
    for (i, rule) in system.rules.iter().enumerate() {
        let lhs = classes.side_class(&rule.lhs);
        let rhs = classes.side_class(&rule.rhs);
        match (lhs, rhs) {
            (SideClass::Plain, SideClass::Overlined) => to_overlined.push(i),
            (SideClass::Overlined, SideClass::Plain) => to_plain.push(i),
            _ => continue,
        }
        for (name, side) in [("left", &rule.lhs), ("right", &rule.rhs)] {
            if !complete_configuration(side) {
                violations.push(format!(
                    "phase rule {i} ({rule}): {name} side does not rewrite a complete \
                     configuration"
                ));
            }
        }
    }
    if to_overlined.len() != 1 {
        violations.push(format!(
            "expected exactly one plain-to-overlined phase rule, found {:?}",
            to_overlined
        ));
    }
    if to_plain.len() != 1 {
        violations.push(format!(
            "expected exactly one overlined-to-plain phase rule, found {:?}",
            to_plain
        ));
    }
    CheckOutcome::from_violations(violations)
}

/// A side of a phase rule must match whole configurations only: either a
/// single non-marker, non-content letter, or a word spanning marker to
/// marker with no marker inside.
fn complete_configuration(side: &Word) -> bool {
    let markers = side
        .iter()
        .enumerate()
        .filter(|(_, l)| l.role() == Role::Marker)
        .map(|(k, _)| k)
        .collect::<Vec<_>>();
    match side.len() {
        0 => false,
        1 => markers.is_empty() && !matches!(side[0].role(), Role::Content),
        n => markers == vec![0, n - 1],
    }
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

    fn classes() -> (BTreeSet<Letter>, BTreeSet<Letter>) {
        let a = w("a b L R").iter().cloned().collect();
        let b = w("q0 p0 s").iter().cloned().collect();
        (a, b)
    }

    #[test]
    fn overlapping_left_sides_violate_uniqueness() {
        let (a, b) = classes();
        let system = sys(&[("a q0 b", "a p0"), ("q0 b", "p0")]);
        let report = check_class_determinism(&system, &a, &b);
        assert!(!report.uniqueness.passed);
        assert!(report.uniqueness.violations[0].contains("a q0 b"));
    }

    #[test]
    fn disjoint_contexts_are_deterministic() {
        let (a, b) = classes();
        let system = sys(&[
            ("a q0 a", "a a p0"),
            ("b q0 a", "b a p0"),
            ("~a ~q0 ~a", "~a ~a ~p0"),
            ("~b ~q0 ~a", "~b ~a ~p0"),
        ]);
        let report = check_class_determinism(&system, &a, &b);
        assert!(report.shape.passed);
        assert!(report.twins.passed);
        assert!(report.uniqueness.passed);
    }

    #[test]
    fn missing_twin_detected() {
        let (a, b) = classes();
        let system = sys(&[("a q0", "p0 a")]);
        let report = check_class_determinism(&system, &a, &b);
        assert!(!report.twins.passed);
    }

    #[test]
    fn state_free_left_side_violates_uniqueness() {
        let (a, b) = classes();
        let system = sys(&[("a a", "a")]);
        let report = check_class_determinism(&system, &a, &b);
        assert!(!report.uniqueness.passed);
    }

    #[test]
    fn phase_rules_counted_and_shape_checked() {
        let (a, b) = classes();
        let system = sys(&[
            ("L q0 R", "s"),
            ("s", "~L ~q0 ~a ~R"),
            ("~L ~q0 ~R", "~s"),
            ("~s", "L q0 a R"),
        ]);
        let report = check_class_determinism(&system, &a, &b);
        assert!(report.phase.passed, "{}", report.phase);

        // A phase rule burying the configuration in context is rejected.
        let bad = sys(&[("a q0", "~a ~q0"), ("~s", "s")]);
        let report = check_class_determinism(&bad, &a, &b);
        assert!(!report.phase.passed);
    }

    #[test]
    fn two_state_sides_fail_shape() {
        let (a, b) = classes();
        let system = sys(&[("q0 p0", "q0"), ("a ~q0", "p0")]);
        let report = check_class_determinism(&system, &a, &b);
        assert_eq!(report.shape.violations.len(), 2);
    }
}
