#![no_main]

use libfuzzer_sys::fuzz_target;
use pcp_workbench::formats::{parse_machine, write_machine};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(tm) = parse_machine(text) {
            let again = parse_machine(&write_machine(&tm)).expect("writer output parses");
            assert_eq!(again, tm);
        }
    }
});
