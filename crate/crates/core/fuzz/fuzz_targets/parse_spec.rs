#![no_main]

use cig_core::constructions::parse_spec;
use libfuzzer_sys::fuzz_target;

// Anything that parses must print to text that parses back to the same spec.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_spec(text) {
        let printed = spec.to_string();
        let again = parse_spec(&printed).expect("printed spec parses");
        assert_eq!(spec, again);
    }
});
