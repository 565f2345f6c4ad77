#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = hyperlat::io::parse_vector(text, 23) {
        assert_eq!(v.len(), 23);
    }
});
