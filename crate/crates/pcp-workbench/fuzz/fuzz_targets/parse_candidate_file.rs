#![no_main]

use libfuzzer_sys::fuzz_target;
use pcp_workbench::formats::{parse_candidate, write_candidate};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(candidate) = parse_candidate(text) {
            let again =
                parse_candidate(&write_candidate(&candidate)).expect("writer output parses");
            assert_eq!(again, candidate);
        }
    }
});
