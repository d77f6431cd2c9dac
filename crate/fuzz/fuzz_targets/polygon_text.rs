#![no_main]

use latticecurve::io::parse_polygon_text;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_polygon_text(s) {
        let text: String = p.vertices().iter().map(|v| format!("{} {}\n", v.z, v.w)).collect();
        assert_eq!(parse_polygon_text(&text).unwrap(), p);
    }
});
