//! The rewriting system file format: one `rule: lhs -> rhs` record per
//! rule, in rule order. The alphabet is inferred and checked on load.

use crate::rewriting::{Rule, SemiThueSystem};

use super::{content_lines, err, parse_word, record, split_arrow, split_key, ParseError};

pub fn parse_system(text: &str) -> Result<SemiThueSystem, ParseError> {
    let mut rules = Vec::new();
    for (line_no, line) in content_lines(text) {
        let (key, value) = split_key(line_no, line)?;
        if key != "rule" {
            return Err(err(line_no, format!("unknown record {key:?}")));
        }
        let (lhs, rhs) = split_arrow(line_no, value)?;
        rules.push(Rule::new(parse_word(line_no, lhs)?, parse_word(line_no, rhs)?));
    }
    SemiThueSystem::new(rules).map_err(|e| err(0, e.to_string()))
}

pub fn write_system(system: &SemiThueSystem) -> String {
    system
        .rules
        .iter()
        .map(|rule| record("rule", &format!("{} -> {}", rule.lhs, rule.rhs)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wordcore::Word;

    #[test]
    fn parses_and_round_trips() {
        let text = "# toy system\nrule: a q b -> a p\nrule: q b -> p\n";
        let system = parse_system(text).unwrap();
        assert_eq!(system.rules.len(), 2);
        assert_eq!(system.rules[1].lhs, Word::parse("q b").unwrap());
        let written = write_system(&system);
        assert_eq!(parse_system(&written).unwrap(), system);
        assert_eq!(written, "rule: a q b -> a p\nrule: q b -> p\n");
    }

    #[test]
    fn rejects_malformed_records() {
        assert_eq!(parse_system("rule: a b\n").unwrap_err().line, 1);
        assert_eq!(parse_system("rules: a -> b\n").unwrap_err().line, 1);
    }
}
