#![no_main]

use flipdist::lp::WeightFunction;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = WeightFunction::parse_certificate(text) {
        assert_eq!(WeightFunction::parse_certificate(&w.to_certificate()).unwrap(), w);
    }
});
