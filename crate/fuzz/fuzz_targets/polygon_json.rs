#![no_main]

use latticecurve::io::parse_polygon_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_polygon_json(s) {
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(parse_polygon_json(&json).unwrap(), p);
    }
});
