#![no_main]

use libfuzzer_sys::fuzz_target;
use oriograph::format::{parse_bundle, serialize_bundle};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(graphs) = parse_bundle(text) {
        let again = parse_bundle(&serialize_bundle(&graphs)).expect("serialized bundle parses");
        assert_eq!(graphs, again);
    }
});
