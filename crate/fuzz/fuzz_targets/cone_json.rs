#![no_main]

use hyperlat::IMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = hyperlat::io::parse_cone(text, 2) {
        let g = IMatrix::from_i64(&[vec![2, 0], vec![0, -2]]);
        let _ = c.validate(&g);
    }
});
