//! Plain-text tables for the `--format table` view.

use std::fmt::Write;

use serde_json::Value;

use latticecurve::campaign::CampaignReport;
use latticecurve::curve::CurveReport;
use latticecurve::polygon::LatticePolygon;

fn row(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<20} {value}");
}

pub fn curve(p: &LatticePolygon, r: &CurveReport) -> String {
    let mut out = String::new();
    row(&mut out, "polygon", p);
    row(&mut out, "genus", r.genus);
    row(&mut out, "lattice_width", r.lattice_width);
    row(&mut out, "q_prime", r.q_prime);
    row(&mut out, "self_intersection", r.self_intersection);
    row(&mut out, "gonality", r.gonality);
    row(&mut out, "clifford", r.clifford.map_or("-".to_string(), |c| c.to_string()));
    let dirs: Vec<String> = r.pencil_directions.iter().map(|d| format!("({},{})", d.x(), d.y())).collect();
    row(&mut out, "pencil_directions", if dirs.is_empty() { "-".to_string() } else { dirs.join(" ") });
    row(&mut out, "pencil_count", r.pencil_count);
    row(&mut out, "branch", r.branch);
    for n in &r.notes {
        row(&mut out, "note", n);
    }
    out
}

pub fn campaign(r: &CampaignReport) -> String {
    let mut out = String::new();
    row(&mut out, "suite", r.suite);
    row(&mut out, "max_coord", r.max_coord);
    row(&mut out, "checked", r.checked);
    row(&mut out, "exempt", r.exempt);
    row(&mut out, "violations", r.violations.len());
    row(&mut out, "wall_time_secs", format!("{:.2}", r.wall_time_secs));
    for (i, c) in r.classes.iter().enumerate() {
        let verts: Vec<String> = c.representative.iter().map(|v| v.to_string()).collect();
        let types: Vec<String> = c.types.iter().map(|t| t.to_string()).collect();
        row(
            &mut out,
            &format!("class {}", i + 1),
            format!("C^2={} g={} types={} {}", c.self_intersection, c.genus, types.join(","), verts.join(" ")),
        );
    }
    for n in &r.notes {
        row(&mut out, "note", n);
    }
    for v in &r.violations {
        let values: Vec<String> = v.values.iter().map(|(k, x)| format!("{k}={x}")).collect();
        row(&mut out, "VIOLATION", format!("{}: {} [{}]", v.claim, v.polygon, values.join(" ")));
    }
    out
}

/// Top-level keys one per row; nested values in compact JSON.
pub fn json_value(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::String(s) => row(&mut out, k, s),
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        for item in items {
                            row(&mut out, k, item);
                        }
                    }
                    other => row(&mut out, k, other),
                }
            }
        }
        other => {
            let _ = writeln!(out, "{other}");
        }
    }
    out
}
