#![no_main]

use latticecurve::fan::{adjunction_genus, self_intersection, toric_fibrations};
use latticecurve::io::parse_fan_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(input) = parse_fan_json(s) else { return };
    let _ = input.refined();
    if let Ok(fan) = input.fan() {
        let _ = toric_fibrations(&fan);
    }
    if let Ok(Some(c)) = input.divisor() {
        let _ = self_intersection(&c);
        let _ = adjunction_genus(&c);
        if let Some(p) = c.polygon() {
            assert!(p.vertices().iter().all(|v| v.within_limit()));
        }
    }
});
