#![no_main]

use cig_core::perm::parse_cycles;
use cig_core::Permutation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_cycles(text);
    if let Ok(p) = Permutation::parse(text, None) {
        if p.degree() <= 4096 {
            let q = Permutation::parse(&p.to_string(), Some(p.degree())).expect("printed cycles parse");
            assert_eq!(p, q);
        }
    }
});
