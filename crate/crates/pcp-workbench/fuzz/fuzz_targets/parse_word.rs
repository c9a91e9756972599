#![no_main]

use libfuzzer_sys::fuzz_target;
use pcp_workbench::wordcore::Word;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(w) = Word::parse(text) {
            let again = Word::parse(&w.to_string()).expect("display output parses");
            assert_eq!(again, w);
        }
    }
});
