//! Falsification campaigns: run the inequalities and census claims over
//! every polygon in a box and collect counterexamples.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::curve::exceptional_census_check;
use crate::enumerate::{brute_force_lattice_width, fold_polygons, relatively_minimal};
use crate::equivalence::canonical_form;
use crate::error::{CurveError, EnumError};
use crate::fan::{
    adjunction_genus, divisor_of_polygon, polygon_of_divisor, toric_fibrations, width_via_fan, ToricDivisor,
};
use crate::lattice::LatticePoint;
use crate::polygon::LatticePolygon;
use crate::width::lattice_width;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Bounds,
    Q4,
    Gonality,
    WidthOracle,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Bounds => "bounds",
            Suite::Q4 => "q4",
            Suite::Gonality => "gonality",
            Suite::WidthOracle => "width-oracle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub polygon: LatticePolygon,
    pub claim: String,
    pub values: BTreeMap<String, i64>,
}

impl Violation {
    fn new(polygon: LatticePolygon, claim: &str, values: &[(&str, i64)]) -> Self {
        Violation {
            polygon,
            claim: claim.to_string(),
            values: values.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

/// One unimodular class found by the census, as its canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusClass {
    pub representative: Vec<LatticePoint>,
    pub genus: i64,
    pub self_intersection: i64,
    /// Indices (1-based) of the reference types in this class.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub types: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub suite: Suite,
    pub max_coord: i64,
    pub checked: u64,
    /// Polygons outside the hypotheses of the claim under test.
    pub exempt: u64,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<CensusClass>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_time_secs: f64,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub const NOTE_CENSUS_EQUIVALENCE: &str =
    "classes are taken up to GL2(Z) and translation, which includes the point reflection";

/// Per-worker accumulator; merging is concatenation, so the result follows
/// enumeration order.
#[derive(Default)]
struct Tally {
    checked: u64,
    exempt: u64,
    violations: Vec<Violation>,
    found: Vec<LatticePolygon>,
}

impl Tally {
    fn merge(mut self, mut other: Tally) -> Tally {
        self.checked += other.checked;
        self.exempt += other.exempt;
        self.violations.append(&mut other.violations);
        self.found.append(&mut other.found);
        self
    }
}

fn run(n: i64, visit: impl Fn(&mut Tally, LatticePolygon) + Sync + Send) -> Result<Tally, EnumError> {
    fold_polygons(
        n,
        Tally::default,
        |t: &mut Tally, vs: &[LatticePoint]| {
            t.checked += 1;
            visit(t, LatticePolygon::from_ccw_vertices(vs.to_vec()))
        },
        Tally::merge,
    )
}

fn report(suite: Suite, n: i64, t: Tally, start: Instant) -> CampaignReport {
    CampaignReport {
        suite,
        max_coord: n,
        checked: t.checked,
        exempt: t.exempt,
        violations: t.violations,
        classes: Vec::new(),
        notes: Vec::new(),
        wall_time_secs: start.elapsed().as_secs_f64(),
    }
}

pub fn run_suite(suite: Suite, n: i64) -> Result<CampaignReport, EnumError> {
    match suite {
        Suite::Bounds => campaign_selfint_bounds(n),
        Suite::Q4 => campaign_q4_census(n),
        Suite::Gonality => campaign_gonality_consistency(n),
        Suite::WidthOracle => campaign_width_oracle(n),
    }
}

/// Self-intersection lower bound for relatively minimal, non-simplex curves
/// of genus at least two with the given lattice width.
pub fn selfint_bound(q: i64) -> Option<i64> {
    match q {
        2 => Some(12),
        3 => Some(18),
        5 => Some(25),
        _ => None,
    }
}

/// `4·C² >= 3·q²` on every polygon, plus the sharper bounds for `q` in
/// {2, 3, 5} on relatively minimal non-simplex polygons of genus >= 2.
pub fn campaign_selfint_bounds(n: i64) -> Result<CampaignReport, EnumError> {
    let start = Instant::now();
    let t = run(n, |t, p| {
        let c2 = p.self_intersection();
        let q = lattice_width(&p).q;
        if 4 * c2 < 3 * q * q {
            t.violations.push(Violation::new(p, "4*C^2 >= 3*q^2", &[("self_intersection", c2), ("q", q)]));
            return;
        }
        let Some(bound) = selfint_bound(q) else { return };
        if c2 >= bound {
            return;
        }
        // only now is the bound binding; check its hypotheses
        if p.genus() < 2 || p.simplex_degree().is_some() || !relatively_minimal(&p) {
            t.exempt += 1;
            return;
        }
        let claim = format!("q = {q} implies C^2 >= {bound}");
        t.violations.push(Violation::new(p, &claim, &[("self_intersection", c2), ("q", q)]));
    })?;
    Ok(report(Suite::Bounds, n, t, start))
}

/// The reference shapes for `q = 4`, `C² <= 16`: one triangle with
/// `C² = 12` and five shapes with `C² = 16`. They are drawn without merging
/// equivalent shapes; up to `GL2(Z)` the third and fifth coincide, as do the
/// fourth and sixth.
pub const Q4_TYPES: [&[(i64, i64)]; 6] = [
    &[(0, 2), (2, 0), (4, 4)],
    &[(0, 4), (2, 0), (4, 4)],
    &[(0, 0), (2, 0), (4, 4), (0, 2)],
    &[(0, 0), (4, 2), (4, 4), (0, 2)],
    &[(0, 2), (2, 0), (4, 2), (4, 4)],
    &[(0, 2), (2, 0), (4, 2), (2, 4)],
];

pub fn q4_type_polygons() -> Vec<LatticePolygon> {
    Q4_TYPES.iter().map(|t| crate::polygon::polygon(t)).collect()
}

/// Collects the unimodular classes of relatively minimal, non-simplex
/// polygons with `q = 4`, `g >= 2`, `C² <= 16` and checks that they are
/// exactly the classes of [`Q4_TYPES`]. Also checks that every relatively minimal polygon
/// with `(g, q)` equal to (4, 4) or (10, 6) is the known triangle.
pub fn campaign_q4_census(n: i64) -> Result<CampaignReport, EnumError> {
    let start = Instant::now();
    let t = run(n, |t, p| {
        let g = p.genus();
        if g != 4 && g != 10 && (g < 2 || p.self_intersection() > 16) {
            return;
        }
        if p.simplex_degree().is_some() {
            return;
        }
        let q = lattice_width(&p).q;
        let census = q == 4 && g >= 2 && p.self_intersection() <= 16;
        let exceptional = (g, q) == (4, 4) || (g, q) == (10, 6);
        if !census && !exceptional {
            return;
        }
        if !relatively_minimal(&p) {
            t.exempt += 1;
            return;
        }
        if exceptional {
            match exceptional_census_check(&p) {
                Ok(_) => {}
                Err(CurveError::CensusViolation(_)) => {
                    t.violations.push(Violation::new(
                        p.clone(),
                        "relatively minimal (g, q) exceptional polygons are the known triangle",
                        &[("genus", g), ("q", q)],
                    ));
                }
                Err(e) => panic!("census check on a relatively minimal polygon: {e}"),
            }
        }
        if census {
            t.found.push(p);
        }
    })?;
    let mut t = t;
    let found = std::mem::take(&mut t.found);
    let mut rep = report(Suite::Q4, n, t, start);
    rep.classes = census_classes(&found);
    let types = q4_type_polygons();
    let type_forms: Vec<Vec<LatticePoint>> = types.iter().map(canonical_form).collect();
    for class in &mut rep.classes {
        class.types = (1..=6).filter(|&k| type_forms[k - 1] == class.representative).collect();
        if class.types.is_empty() {
            let poly = LatticePolygon::from_points(&class.representative).expect("class representative");
            rep.violations.push(Violation::new(
                poly,
                "q = 4, C^2 <= 16 shapes are among the six reference types",
                &[("self_intersection", class.self_intersection)],
            ));
        }
    }
    for (k, t) in types.into_iter().enumerate() {
        if !rep.classes.iter().any(|c| c.types.contains(&(k + 1))) {
            let c2 = t.self_intersection();
            let claim = format!("reference type {} occurs", k + 1);
            rep.violations.push(Violation::new(t, &claim, &[("self_intersection", c2)]));
        }
    }
    rep.notes.push(NOTE_CENSUS_EQUIVALENCE.to_string());
    rep.wall_time_secs = start.elapsed().as_secs_f64();
    Ok(rep)
}

/// Unimodular classes of `polys`, sorted by `(C², canonical form)`.
pub fn census_classes(polys: &[LatticePolygon]) -> Vec<CensusClass> {
    let mut classes: HashMap<Vec<LatticePoint>, &LatticePolygon> = HashMap::new();
    for p in polys {
        classes.entry(canonical_form(p)).or_insert(p);
    }
    let mut out: Vec<CensusClass> = classes
        .into_iter()
        .map(|(form, p)| CensusClass {
            representative: form,
            genus: p.genus(),
            self_intersection: p.self_intersection(),
            types: Vec::new(),
        })
        .collect();
    out.sort_by(|a, b| (a.self_intersection, &a.representative).cmp(&(b.self_intersection, &b.representative)));
    out
}

/// Cross-checks the toric path against the polygon itself. The flag is
/// false when the fibration claim did not apply (a simplex, whose model
/// has no toric fibration).
pub fn toric_consistency(p: &LatticePolygon) -> (Vec<Violation>, bool) {
    let mut out = Vec::new();
    let mut push = |claim: &str, values: &[(&str, i64)]| out.push(Violation::new(p.clone(), claim, values));
    let b = p.boundary_count();
    let i = p.interior_count();
    if p.twice_area() != 2 * i + b - 2 {
        push("Pick identity", &[("twice_area", p.twice_area()), ("interior", i), ("boundary", b)]);
    }
    let c: ToricDivisor = match divisor_of_polygon(p) {
        Ok(c) => c,
        Err(_) => {
            push("polygon has a divisor", &[]);
            return (out, true);
        }
    };
    match adjunction_genus(&c) {
        Ok(g) if g == i => {}
        Ok(g) => push("adjunction genus = interior count", &[("adjunction", g), ("interior", i)]),
        Err(_) => push("adjunction genus is defined", &[]),
    }
    for (k, &r) in c.fan().rays().iter().enumerate() {
        let direct = p.width(r);
        match width_via_fan(&c, r) {
            Ok(w) if w == direct => {}
            Ok(w) => push("width via fan = direct width", &[("ray", k as i64), ("via_fan", w), ("direct", direct)]),
            Err(_) => push("width via fan is defined", &[("ray", k as i64)]),
        }
    }
    let round = ToricDivisor::new(c.fan().clone(), c.coeffs().to_vec()).and_then(|d| polygon_of_divisor(&d));
    match round {
        Ok(q) if q == *p => {}
        _ => push("polygon -> divisor -> polygon round trip", &[]),
    }
    let q = lattice_width(p).q;
    let mut fibered = true;
    match toric_fibrations(c.fan()) {
        Ok(fibers) => {
            let min = fibers.iter().map(|f| f.degree(&c).expect("fiber degree")).min().expect("non-empty");
            if min != q {
                push("min fibration degree = lattice width", &[("min_degree", min), ("q", q)]);
            }
        }
        Err(_) if p.simplex_degree().is_some() => fibered = false,
        Err(_) => push("non-simplex model has a toric fibration", &[("q", q)]),
    }
    (out, fibered)
}

/// Lattice width against the minimum fibration degree, adjunction against
/// interior points, fan widths against direct widths and the divisor
/// round trip, on every polygon. Simplices are exempt from the fibration
/// claim only.
pub fn campaign_gonality_consistency(n: i64) -> Result<CampaignReport, EnumError> {
    let start = Instant::now();
    let t = run(n, |t, p| {
        let (mut v, fibered) = toric_consistency(&p);
        if !fibered {
            t.exempt += 1;
        }
        t.violations.append(&mut v);
    })?;
    Ok(report(Suite::Gonality, n, t, start))
}

/// Reduction-based width against the brute-force oracle on every polygon.
pub fn campaign_width_oracle(n: i64) -> Result<CampaignReport, EnumError> {
    let start = Instant::now();
    let t = run(n, |t, p| {
        if let Some(v) = width_disagreement(&p) {
            t.violations.push(v);
        }
    })?;
    Ok(report(Suite::WidthOracle, n, t, start))
}

/// The same comparison on an explicit list, e.g. random polygons.
pub fn campaign_width_oracle_on(polys: &[LatticePolygon]) -> CampaignReport {
    let start = Instant::now();
    let mut t = Tally::default();
    for p in polys {
        t.checked += 1;
        if let Some(v) = width_disagreement(p) {
            t.violations.push(v);
        }
    }
    let n = polys.iter().flat_map(|p| p.vertices()).map(|v| v.z.abs().max(v.w.abs())).max().unwrap_or(0);
    report(Suite::WidthOracle, n, t, start)
}

fn width_disagreement(p: &LatticePolygon) -> Option<Violation> {
    let q = lattice_width(p).q;
    let brute = brute_force_lattice_width(p, None);
    (q != brute).then(|| {
        Violation::new(p.clone(), "reduction width = brute-force width", &[("reduction", q), ("brute_force", brute)])
    })
}
