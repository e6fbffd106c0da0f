#![no_main]

use flipdist::model::Triangulation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = Triangulation::parse(text) {
        assert_eq!(Triangulation::parse(&t.to_text()).unwrap(), t);
        assert_eq!(t.diagonals().len(), t.n() - 1);
    }
});
