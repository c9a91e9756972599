//! The reduction manifest: the sidecar that, together with a system file,
//! rebuilds a full [`ReductionSystem`].
//!
//! ```text
//! w0: L q0 a R
//! u_halt: L H R
//! s: s
//! states: H q0
//! width: 1
//! encode: _ -> a
//! role: simulate
//! ```
//!
//! `encode` records appear once per tape letter and `role` records once
//! per rule, in rule order.

use std::collections::BTreeSet;

use crate::rewriting::SemiThueSystem;
use crate::tm2st::{EncodingMap, ReductionSystem, RuleRole};
use crate::wordcore::{Letter, Word};

use super::{content_lines, err, parse_letter, parse_word, record, split_arrow, split_key, Field, ParseError};

/// The parsed sidecar fields of a [`ReductionSystem`], minus the rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionManifest {
    pub w0: Word,
    pub u_halt: Word,
    pub s: Letter,
    pub machine_states: BTreeSet<Letter>,
    pub encoding: EncodingMap,
    pub roles: Vec<RuleRole>,
}

pub fn parse_manifest(text: &str) -> Result<ReductionManifest, ParseError> {
    let mut w0 = Field::new("w0");
    let mut u_halt = Field::new("u_halt");
    let mut s = Field::new("s");
    let mut states = Field::new("states");
    let mut width = Field::new("width");
    let mut codes: Vec<(usize, Letter, Word)> = Vec::new();
    let mut roles: Vec<RuleRole> = Vec::new();

    for (line_no, line) in content_lines(text) {
        let (key, value) = split_key(line_no, line)?;
        match key {
            "w0" => w0.set(line_no, parse_word(line_no, value)?)?,
            "u_halt" => u_halt.set(line_no, parse_word(line_no, value)?)?,
            "s" => s.set(line_no, parse_letter(line_no, value)?)?,
            "states" => states.set(line_no, parse_word(line_no, value)?)?,
            "width" => width.set(
                line_no,
                value
                    .parse::<usize>()
                    .map_err(|_| err(line_no, format!("width must be a number, found {value:?}")))?,
            )?,
            "encode" => {
                let (letter, code) = split_arrow(line_no, value)?;
                codes.push((
                    line_no,
                    parse_letter(line_no, letter)?,
                    parse_word(line_no, code)?,
                ));
            }
            "role" => roles.push(
                value
                    .parse::<RuleRole>()
                    .map_err(|e| err(line_no, e))?,
            ),
            other => return Err(err(line_no, format!("unknown record {other:?}"))),
        }
    }

    let first_code_line = codes.first().map_or(0, |(line, _, _)| *line);
    let encoding = EncodingMap::from_codes(codes.into_iter().map(|(_, l, w)| (l, w)))
        .map_err(|e| err(first_code_line, e.to_string()))?;
    let width = width.take()?;
    if encoding.width() != width {
        return Err(err(
            0,
            format!(
                "width record says {width} but the encode table has width {}",
                encoding.width()
            ),
        ));
    }
    Ok(ReductionManifest {
        w0: w0.take()?,
        u_halt: u_halt.take()?,
        s: s.take()?,
        machine_states: states.take()?.iter().cloned().collect(),
        encoding,
        roles,
    })
}

pub fn write_manifest(r: &ReductionSystem) -> String {
    let mut out = String::new();
    out.push_str(&record("w0", &r.w0.to_string()));
    out.push_str(&record("u_halt", &r.u_halt.to_string()));
    out.push_str(&record("s", &r.s.to_string()));
    let states = r
        .machine_states
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    out.push_str(&record("states", &states));
    out.push_str(&record("width", &r.encoding.width().to_string()));
    for letter in r.encoding.letters() {
        let code = r.encoding.code(letter).expect("letters() yields mapped letters");
        out.push_str(&record("encode", &format!("{letter} -> {code}")));
    }
    for role in &r.roles {
        out.push_str(&record("role", role.as_str()));
    }
    out
}

/// Joins a parsed system file with its manifest. The role list must match
/// the rule count.
pub fn assemble_reduction(
    system: SemiThueSystem,
    manifest: ReductionManifest,
) -> Result<ReductionSystem, ParseError> {
    if manifest.roles.len() != system.rules.len() {
        return Err(err(
            0,
            format!(
                "{} role records for {} rules",
                manifest.roles.len(),
                system.rules.len()
            ),
        ));
    }
    Ok(ReductionSystem {
        system,
        w0: manifest.w0,
        u_halt: manifest.u_halt,
        s: manifest.s,
        roles: manifest.roles,
        encoding: manifest.encoding,
        machine_states: manifest.machine_states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{parse_system, write_system};
    use crate::samples::instant_halt;
    use crate::tm2st::build_reduction;

    fn sample_reduction() -> ReductionSystem {
        build_reduction(&instant_halt()).unwrap()
    }

    #[test]
    fn manifest_round_trips_through_text() {
        let reduction = sample_reduction();
        let manifest_text = write_manifest(&reduction);
        let system_text = write_system(&reduction.system);

        let manifest = parse_manifest(&manifest_text).unwrap();
        let system = parse_system(&system_text).unwrap();
        let rebuilt = assemble_reduction(system, manifest).unwrap();
        assert_eq!(rebuilt, reduction);
    }

    #[test]
    fn inconsistent_manifests_are_rejected() {
        let reduction = sample_reduction();
        let text = write_manifest(&reduction);

        let clipped = text.replace("width: 1", "width: 3");
        let e = parse_manifest(&clipped).unwrap_err();
        assert!(e.to_string().contains("width"), "{e}");

        let manifest = parse_manifest(&text).unwrap();
        let one_rule = SemiThueSystem::new(vec![reduction.system.rules[0].clone()]).unwrap();
        assert!(assemble_reduction(one_rule, manifest).is_err());

        let missing = text.replace("s: s\n", "");
        assert_eq!(parse_manifest(&missing).unwrap_err().to_string(), "missing s record");
    }
}
