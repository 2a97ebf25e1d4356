#![no_main]

use libfuzzer_sys::fuzz_target;
use oriograph::IndexVector;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text.parse::<IndexVector>() {
        assert_eq!(v.to_string().parse::<IndexVector>().expect("display form parses"), v);
    }
});
