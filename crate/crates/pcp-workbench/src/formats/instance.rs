//! Correspondence instance files: two morphisms over a shared alphabet.
//!
//! ```text
//! manifest: machine.manifest
//! domain: a b
//! codomain: a b
//! h: a -> a b a
//! h: b -> b
//! g: a -> b a b
//! g: b -> a
//! ```
//!
//! The `manifest` record is an optional free-form reference to the sidecar
//! the instance was derived from; this module only carries it through.
//! `domain` fixes the row order, and every domain letter needs exactly one
//! `h` and one `g` record. Images may be empty.

use std::collections::BTreeMap;

use crate::st2cpcp::CpcpInstance;
use crate::wordcore::{Letter, Word};

use super::{content_lines, err, record, split_arrow, split_key, Field, ParseError};

pub fn parse_instance(text: &str) -> Result<(CpcpInstance, Option<String>), ParseError> {
    let mut manifest = Field::new("manifest");
    let mut domain = Field::new("domain");
    let mut codomain = Field::new("codomain");
    let mut h_images: BTreeMap<Letter, Word> = BTreeMap::new();
    let mut g_images: BTreeMap<Letter, Word> = BTreeMap::new();

    for (line_no, line) in content_lines(text) {
        let (key, value) = split_key(line_no, line)?;
        match key {
            "manifest" => manifest.set(line_no, value.to_string())?,
            "domain" => domain.set(line_no, super::parse_word(line_no, value)?)?,
            "codomain" => codomain.set(line_no, super::parse_word(line_no, value)?)?,
            "h" | "g" => {
                let (letter, image) = split_arrow(line_no, value)?;
                let letter = super::parse_letter(line_no, letter)?;
                let image = super::parse_word(line_no, image)?;
                let images = if key == "h" { &mut h_images } else { &mut g_images };
                if images.insert(letter.clone(), image).is_some() {
                    return Err(err(line_no, format!("duplicate {key} record for {letter}")));
                }
            }
            other => return Err(err(line_no, format!("unknown record {other:?}"))),
        }
    }

    let rows: Vec<Letter> = domain.take()?.iter().cloned().collect();
    let codomain = codomain.take()?.iter().cloned().collect();
    for images in [&h_images, &g_images] {
        for letter in images.keys() {
            if !rows.contains(letter) {
                return Err(err(0, format!("image given for {letter}, which is not in the domain")));
            }
        }
    }
    for row in &rows {
        if !h_images.contains_key(row) {
            return Err(err(0, format!("missing h record for {row}")));
        }
        if !g_images.contains_key(row) {
            return Err(err(0, format!("missing g record for {row}")));
        }
    }

    let h = crate::wordcore::Morphism::with_codomain(h_images, codomain)
        .map_err(|e| err(0, e.to_string()))?;
    let g = crate::wordcore::Morphism::with_codomain(g_images, h.codomain().clone())
        .map_err(|e| err(0, e.to_string()))?;
    let instance = CpcpInstance {
        h,
        g,
        rows,
        reduction: None,
    };
    Ok((instance, manifest.optional()))
}

pub fn write_instance(instance: &CpcpInstance, manifest_ref: Option<&str>) -> String {
    let join = |letters: &mut dyn Iterator<Item = &Letter>| {
        letters.map(ToString::to_string).collect::<Vec<_>>().join(" ")
    };
    let mut out = String::new();
    if let Some(path) = manifest_ref {
        out.push_str(&record("manifest", path));
    }
    out.push_str(&record("domain", &join(&mut instance.rows.iter())));
    let codomain: std::collections::BTreeSet<&Letter> = instance
        .h
        .codomain()
        .iter()
        .chain(instance.g.codomain())
        .collect();
    out.push_str(&record("codomain", &join(&mut codomain.into_iter())));
    for (name, morphism) in [("h", &instance.h), ("g", &instance.g)] {
        for row in &instance.rows {
            let image = morphism.image(row).expect("rows lists domain letters");
            out.push_str(&record(name, &format!("{row} -> {image}")));
        }
    }
    out
}
