#![no_main]

use libfuzzer_sys::fuzz_target;
use oriograph::format::{parse_parts, serialize_parts};

// First byte picks the ground-set size; the rest is the `.parts` text.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(p) = parse_parts(text, n as usize) {
        assert_eq!(p.sizes().iter().sum::<usize>(), n as usize);
        assert_eq!(parse_parts(&serialize_parts(&p), n as usize).expect("serialized parts parse"), p);
    }
});
