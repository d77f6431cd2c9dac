#![no_main]

use latticecurve::gaps::gap_report;
use latticecurve::io::parse_model_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(model) = parse_model_json(s) else { return };
    // keep the sweep short
    if model.m > 200 {
        return;
    }
    if let Ok(r) = gap_report(&model) {
        assert_eq!(r.gaps.len() as i64, r.genus);
    }
});
