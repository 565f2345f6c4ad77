#![no_main]

use hyperlat::Lattice;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let l = Lattice::l2();
    if let Ok(s) = hyperlat::io::parse_sublattice(text, &l) {
        assert!(s.rank() <= l.rank());
        let _ = s.is_primitive();
        let _ = s.signature();
    }
});
