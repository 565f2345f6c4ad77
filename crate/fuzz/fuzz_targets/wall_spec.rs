#![no_main]

use hyperlat::walls::WallSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = WallSpec::parse(text) {
        assert!(!spec.allowed.is_empty());
        assert!(spec.norms().iter().all(|n| *n < 0));
    }
});
