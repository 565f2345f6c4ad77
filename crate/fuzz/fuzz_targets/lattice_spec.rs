#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = hyperlat::latspec::parse_spec(text) {
        // keep the determinant computation small
        if spec.rank() <= 64 {
            if let Ok(l) = spec.build() {
                assert_eq!(l.rank(), spec.rank());
            }
        }
    }
});
