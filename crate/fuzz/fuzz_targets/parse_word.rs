#![no_main]

use gzoo::textio::{parse_word, Presentation};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let p = Presentation::new(Vec::new());
    if let Ok(w) = parse_word(text, &p) {
        let again = parse_word(&p.format_word(&w), &p).expect("printed word parses");
        assert_eq!(again, w);
    }
});
