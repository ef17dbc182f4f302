#![no_main]

use cig_core::perm::parse_tuple;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&deg, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(t) = parse_tuple(text, deg as usize) {
        assert!(t.iter().all(|x| x.degree() == deg as usize));
    }
});
