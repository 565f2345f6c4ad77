#![no_main]

use hyperlat::isometry::is_isometry;
use hyperlat::Lattice;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let l = Lattice::direct_sum(&[&Lattice::u(), &Lattice::u()]);
    if let Ok(m) = hyperlat::io::parse_matrix(text, l.rank()) {
        if is_isometry(&m, &l).unwrap_or(false) {
            let _ = hyperlat::spinor::mon2_condition(&l, &m);
        }
    }
});
