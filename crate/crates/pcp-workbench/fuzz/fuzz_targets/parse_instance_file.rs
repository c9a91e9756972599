#![no_main]

use libfuzzer_sys::fuzz_target;
use pcp_workbench::formats::{parse_instance, write_instance};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((instance, manifest)) = parse_instance(text) {
            let rewritten = write_instance(&instance, manifest.as_deref());
            let (again, manifest_again) =
                parse_instance(&rewritten).expect("writer output parses");
            assert_eq!(again, instance);
            assert_eq!(manifest_again, manifest);
        }
    }
});
