#![no_main]

use libfuzzer_sys::fuzz_target;
use pcp_workbench::formats::parse_manifest;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        match parse_manifest(text) {
            Ok(manifest) => {
                let _ = manifest.w0.to_string();
            }
            Err(e) => {
                let _ = e.to_string();
            }
        }
    }
});
