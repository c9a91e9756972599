#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use pcp_workbench::samples;
use pcp_workbench::st2cpcp::{build_instance, decode_solution, encode_derivation, CpcpInstance};
use pcp_workbench::tm2st::build_reduction;
use pcp_workbench::wordcore::Word;

fn instance() -> &'static CpcpInstance {
    static INSTANCE: OnceLock<CpcpInstance> = OnceLock::new();
    INSTANCE.get_or_init(|| {
        let reduction = build_reduction(&samples::instant_halt()).unwrap();
        build_instance(&reduction).unwrap()
    })
}

fn probe(inst: &CpcpInstance, w: &Word) {
    if let Ok(trace) = decode_solution(inst, w) {
        // Anything that decodes must re-encode to a decodable solution of
        // the same derivation.
        let back = encode_derivation(inst, &trace).expect("decoded traces re-encode");
        let again = decode_solution(inst, &back).expect("re-encoded solutions decode");
        assert_eq!(again, trace);
    }
}

fuzz_target!(|data: &[u8]| {
    let inst = instance();

    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(w) = Word::parse(text) {
            probe(inst, &w);
        }
    }

    // Interpret the bytes as domain-row picks so the decoder sees deep,
    // well-lettered inputs as well as raw text.
    let mut w = Word::new();
    for b in data {
        w.push(inst.rows[*b as usize % inst.rows.len()].clone());
    }
    probe(inst, &w);
});
