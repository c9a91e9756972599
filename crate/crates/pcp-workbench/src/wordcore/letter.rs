use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors raised when constructing or parsing a [`Letter`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LetterError {
    #[error("empty letter base")]
    EmptyBase,
    #[error("letter base {0:?} contains a forbidden character")]
    ForbiddenChar(String),
    #[error("letter base {0:?} ends in a subscript suffix")]
    TrailingSubscript(String),
    #[error("letter base {0:?} does not match rule-ref role")]
    RuleRefMismatch(String),
    #[error("subscript is only allowed on content and marker letters")]
    SubscriptRole,
    #[error("empty letter spelling")]
    EmptySpelling,
}

/// Block subscript attached to content and marker letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subscript {
    One,
    Two,
}

/// Classification of a letter within the workbench alphabets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// Tape-content letters (a, b and raw tape symbols).
    Content,
    /// Endmarkers L and R.
    Marker,
    /// Machine states.
    State,
    /// Punctuation of the encodings (#, $, £, I, d, e, f, s).
    Special,
    /// A letter standing for the rule with the given index.
    RuleRef(usize),
}

/// One symbol of a [`Word`](crate::wordcore::Word).
///
/// The canonical spelling is `~` for an overline, then the base, then `_1`
/// or `_2` for a subscript; rule letters spell as `t<k>`. The spelling
/// determines the letter completely: the role is computed from the base by
/// [`Letter::classify`], so parsing and printing round-trip.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    base: String,
    overlined: bool,
    subscript: Option<Subscript>,
    role: Role,
}

const SPECIAL_BASES: [&str; 8] = ["#", "$", "£", "I", "d", "e", "f", "s"];

fn rule_index(base: &str) -> Option<usize> {
    let digits = base.strip_prefix('t')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn check_base(base: &str) -> Result<(), LetterError> {
    if base.is_empty() {
        return Err(LetterError::EmptyBase);
    }
    if base.chars().any(|c| c.is_whitespace() || c == '~' || c == ':' || c == '|') || base == "->" {
        return Err(LetterError::ForbiddenChar(base.to_string()));
    }
    if base.len() > 2 && (base.ends_with("_1") || base.ends_with("_2")) {
        return Err(LetterError::TrailingSubscript(base.to_string()));
    }
    Ok(())
}

impl Letter {
    /// The role the canonical spelling assigns to `base`.
    pub fn classify(base: &str) -> Role {
        if let Some(k) = rule_index(base) {
            return Role::RuleRef(k);
        }
        match base {
            "a" | "b" => Role::Content,
            "L" | "R" => Role::Marker,
            _ if SPECIAL_BASES.contains(&base) => Role::Special,
            _ if base.bytes().all(|b| b.is_ascii_digit()) => Role::Content,
            _ => Role::State,
        }
    }

    fn new(
        base: &str,
        overlined: bool,
        subscript: Option<Subscript>,
        role: Role,
    ) -> Result<Self, LetterError> {
        check_base(base)?;
        match role {
            Role::RuleRef(k) => {
                if rule_index(base) != Some(k) {
                    return Err(LetterError::RuleRefMismatch(base.to_string()));
                }
            }
            _ => {
                if rule_index(base).is_some() {
                    return Err(LetterError::RuleRefMismatch(base.to_string()));
                }
            }
        }
        if subscript.is_some() && !matches!(role, Role::Content | Role::Marker) {
            return Err(LetterError::SubscriptRole);
        }
        Ok(Letter {
            base: base.to_string(),
            overlined,
            subscript,
            role,
        })
    }

    /// Parses one canonical spelling token.
    pub fn from_spelling(token: &str) -> Result<Self, LetterError> {
        if token.is_empty() {
            return Err(LetterError::EmptySpelling);
        }
        let (overlined, rest) = match token.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, token),
        };
        let (subscript, base) = if let Some(base) = rest.strip_suffix("_1") {
            (Some(Subscript::One), base)
        } else if let Some(base) = rest.strip_suffix("_2") {
            (Some(Subscript::Two), base)
        } else {
            (None, rest)
        };
        Letter::new(base, overlined, subscript, Letter::classify(base))
    }

    /// A content letter, regardless of what the classifier would say.
    /// Used for tape symbols named in machine descriptions.
    pub fn content(base: &str) -> Result<Self, LetterError> {
        Letter::new(base, false, None, Role::Content)
    }

    /// A state letter, regardless of what the classifier would say.
    pub fn state(base: &str) -> Result<Self, LetterError> {
        Letter::new(base, false, None, Role::State)
    }

    /// The letter standing for rule `k`.
    pub fn rule_ref(k: usize) -> Self {
        Letter {
            base: format!("t{k}"),
            overlined: false,
            subscript: None,
            role: Role::RuleRef(k),
        }
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn is_overlined(&self) -> bool {
        self.overlined
    }

    pub fn subscript(&self) -> Option<Subscript> {
        self.subscript
    }

    /// The rule index if this is a rule letter.
    pub fn as_rule_ref(&self) -> Option<usize> {
        match self.role {
            Role::RuleRef(k) => Some(k),
            _ => None,
        }
    }

    /// The same letter with the overline flag flipped.
    pub fn toggled(&self) -> Self {
        let mut l = self.clone();
        l.overlined = !l.overlined;
        l
    }

    /// The same letter with the given subscript.
    pub fn with_subscript(&self, subscript: Subscript) -> Result<Self, LetterError> {
        if !matches!(self.role, Role::Content | Role::Marker) {
            return Err(LetterError::SubscriptRole);
        }
        let mut l = self.clone();
        l.subscript = Some(subscript);
        Ok(l)
    }

    /// The same letter with no subscript.
    pub fn without_subscript(&self) -> Self {
        let mut l = self.clone();
        l.subscript = None;
        l
    }

    /// Whether the spelling of this letter round-trips through
    /// [`Letter::from_spelling`]. False for letters whose explicit role
    /// disagrees with the classifier (for example a state named `a`).
    pub fn spelling_is_canonical(&self) -> bool {
        Letter::from_spelling(&self.to_string()).as_ref() == Ok(self)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.overlined {
            write!(f, "~")?;
        }
        write!(f, "{}", self.base)?;
        match self.subscript {
            Some(Subscript::One) => write!(f, "_1"),
            Some(Subscript::Two) => write!(f, "_2"),
            None => Ok(()),
        }
    }
}

impl FromStr for Letter {
    type Err = LetterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Letter::from_spelling(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spelling_determines_letter() {
        let l = Letter::from_spelling("~a_2").unwrap();
        assert!(l.is_overlined());
        assert_eq!(l.base(), "a");
        assert_eq!(l.subscript(), Some(Subscript::Two));
        assert_eq!(l.role(), Role::Content);
        assert_eq!(l.to_string(), "~a_2");
    }

    #[test]
    fn rule_refs_parse_and_print() {
        let t3 = Letter::from_spelling("t3").unwrap();
        assert_eq!(t3, Letter::rule_ref(3));
        assert_eq!(t3.as_rule_ref(), Some(3));
        assert_eq!(t3.to_string(), "t3");
        let ov = Letter::from_spelling("~t12").unwrap();
        assert_eq!(ov, Letter::rule_ref(12).toggled());
    }

    #[test]
    fn classifier_roles() {
        for (s, role) in [
            ("a", Role::Content),
            ("b", Role::Content),
            ("0", Role::Content),
            ("17", Role::Content),
            ("L", Role::Marker),
            ("R", Role::Marker),
            ("#", Role::Special),
            ("$", Role::Special),
            ("£", Role::Special),
            ("I", Role::Special),
            ("d", Role::Special),
            ("e", Role::Special),
            ("f", Role::Special),
            ("s", Role::Special),
            ("q0", Role::State),
            ("H", Role::State),
            ("t", Role::State),
            ("tx", Role::State),
        ] {
            assert_eq!(Letter::from_spelling(s).unwrap().role(), role, "{s}");
        }
    }

    #[test]
    fn subscripts_restricted_to_content_and_marker() {
        assert!(Letter::from_spelling("a_1").is_ok());
        assert!(Letter::from_spelling("L_2").is_ok());
        assert_eq!(
            Letter::from_spelling("q0_1"),
            Err(LetterError::SubscriptRole)
        );
        assert_eq!(
            Letter::from_spelling("t3_1"),
            Err(LetterError::SubscriptRole)
        );
        assert_eq!(Letter::from_spelling("#_2"), Err(LetterError::SubscriptRole));
    }

    #[test]
    fn bad_spellings_rejected() {
        assert!(Letter::from_spelling("").is_err());
        assert!(Letter::from_spelling("~").is_err());
        assert!(Letter::from_spelling("a~b").is_err());
        assert!(Letter::from_spelling("x_1_2").is_err());
        assert!(Letter::from_spelling("->").is_err());
        assert!(Letter::from_spelling("a:b").is_err());
        assert!(Letter::from_spelling("_1").is_err());
    }

    #[test]
    fn explicit_roles_may_shadow_the_classifier() {
        let s = Letter::state("q0").unwrap();
        assert!(s.spelling_is_canonical());
        let shadow = Letter::state("a").unwrap();
        assert!(!shadow.spelling_is_canonical());
        assert_ne!(shadow, Letter::from_spelling("a").unwrap());
    }

    #[test]
    fn toggling_is_an_involution() {
        let l = Letter::from_spelling("~L_1").unwrap();
        assert_eq!(l.toggled().toggled(), l);
        assert_eq!(l.toggled().to_string(), "L_1");
    }
}
