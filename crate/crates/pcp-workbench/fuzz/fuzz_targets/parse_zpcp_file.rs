#![no_main]

use libfuzzer_sys::fuzz_target;
use pcp_workbench::formats::{parse_zpcp_instance, write_zpcp_instance};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(instance) = parse_zpcp_instance(text) {
            let again =
                parse_zpcp_instance(&write_zpcp_instance(&instance)).expect("writer output parses");
            assert_eq!(again, instance);
        }
    }
});
