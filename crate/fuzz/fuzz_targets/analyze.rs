#![no_main]

use latticecurve::curve::classify_curve;
use latticecurve::fan::{divisor_of_polygon, relative_minimalize};
use latticecurve::io::{parse_input, Input};
use latticecurve::svg::polygon_svg;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(Input::Polygon(p)) = parse_input(s) else { return };
    let (z0, w0, z1, w1) = p.bounding_box();
    if z1 - z0 > 1000 || w1 - w0 > 1000 {
        return;
    }
    if let Ok(r) = classify_curve(&p) {
        assert_eq!(r.genus, p.genus());
        assert!(r.gonality <= r.lattice_width);
    }
    if let Ok(c) = divisor_of_polygon(&p) {
        let _ = relative_minimalize(&c);
    }
    let _ = polygon_svg(&p);
});
