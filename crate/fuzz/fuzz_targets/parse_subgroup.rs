#![no_main]

use gzoo::textio::{parse_subgroup, Presentation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_subgroup(text, &Presentation::new(Vec::new()));
    }
});
