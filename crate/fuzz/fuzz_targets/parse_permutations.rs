#![no_main]

use gzoo::textio::parse_permutations;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(input) = parse_permutations(text) {
        let again = parse_permutations(&input.to_string()).expect("printed permutations parse");
        assert_eq!(again, input);
    }
});
