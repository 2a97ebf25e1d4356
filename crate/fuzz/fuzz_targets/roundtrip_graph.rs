#![no_main]

use libfuzzer_sys::fuzz_target;
use oriograph::format::{parse_graph, serialize_graph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph(text) {
        let out = serialize_graph(&g);
        let again = parse_graph(&out).expect("serialized graph parses");
        assert_eq!(g, again);
        assert_eq!(serialize_graph(&again), out);
    }
});
