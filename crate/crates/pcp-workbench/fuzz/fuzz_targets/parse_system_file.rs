#![no_main]

use libfuzzer_sys::fuzz_target;
use pcp_workbench::formats::{parse_system, write_system};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(system) = parse_system(text) {
            let again = parse_system(&write_system(&system)).expect("writer output parses");
            assert_eq!(again, system);
        }
    }
});
