//! Gonality, Clifford index and gonality pencils of a curve given by its
//! lattice polygon.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::equivalence::unimodular_equivalent;
use crate::error::CurveError;
use crate::fan::{divisor_of_polygon, is_relatively_minimal};
use crate::lattice::Direction;
use crate::polygon::{polygon, LatticePolygon};
use crate::width::{lattice_width, normalize_width};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Genus 0 or 1.
    LowGenus(i64),
    /// `d Δ`, a smooth plane curve of degree `d`.
    PlaneCurve(i64),
    /// Lattice width 2.
    Hyperelliptic,
    #[serde(rename = "exc_4_4")]
    Exc4_4,
    #[serde(rename = "exc_5_4")]
    Exc5_4,
    #[serde(rename = "exc_10_6")]
    Exc10_6,
    Generic,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::LowGenus(g) => write!(f, "low_genus({g})"),
            Branch::PlaneCurve(d) => write!(f, "plane_curve({d})"),
            Branch::Hyperelliptic => write!(f, "hyperelliptic"),
            Branch::Exc4_4 => write!(f, "exc_4_4"),
            Branch::Exc5_4 => write!(f, "exc_5_4"),
            Branch::Exc10_6 => write!(f, "exc_10_6"),
            Branch::Generic => write!(f, "generic"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PencilCount {
    Exact(usize),
    OneOrTwoNotPolygonDetermined,
    Infinite,
}

impl fmt::Display for PencilCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PencilCount::Exact(n) => write!(f, "{n}"),
            PencilCount::OneOrTwoNotPolygonDetermined => write!(f, "one or two, not polygon-determined"),
            PencilCount::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub genus: i64,
    pub lattice_width: i64,
    pub q_prime: i64,
    pub self_intersection: i64,
    pub gonality: i64,
    pub clifford: Option<i64>,
    pub pencil_directions: Vec<Direction>,
    pub pencil_count: PencilCount,
    pub branch: Branch,
    pub notes: Vec<String>,
}

pub const NOTE_LOW_GENUS: &str = "genus below 2: gonality is informational only";
pub const NOTE_PLANE: &str = "every gonality pencil is cut out by lines through a point of the curve";
pub const NOTE_HYPERCUBIC: &str = "complete intersection of two hypercubics";
pub const NOTE_FIBRATIONS: &str =
    "pencil directions are axes of toric fibrations computing the gonality, not a count of pencils";
pub const NOTE_4_4: &str = "one or two trigonal pencils; the polygon does not determine which";
pub const NOTE_5_4: &str = "infinitely many gonality pencils; gonality attains floor((g+3)/2)";
pub const NOTE_PLANE_MODEL: &str =
    "smooth plane models are only recognised when the polygon is a multiple of the standard simplex";

/// Runs the decision tree on a full-dimensional polygon.
pub fn classify_curve(p: &LatticePolygon) -> Result<CurveReport, CurveError> {
    if !p.is_full_dimensional() {
        return Err(CurveError::DegeneratePolygon);
    }
    let g = p.genus();
    let lw = lattice_width(p);
    let q = lw.q;
    let q_prime = normalize_width(p).map_err(|_| CurveError::DegeneratePolygon)?.q_prime;
    let witnesses = lw.witnesses.directions().to_vec();
    let mut r = CurveReport {
        genus: g,
        lattice_width: q,
        q_prime,
        self_intersection: p.self_intersection(),
        gonality: q,
        clifford: None,
        pencil_directions: Vec::new(),
        pencil_count: PencilCount::Infinite,
        branch: Branch::Generic,
        notes: Vec::new(),
    };

    if g <= 1 {
        r.branch = Branch::LowGenus(g);
        r.gonality = if g == 0 { 1 } else { 2 };
        r.notes.push(NOTE_LOW_GENUS.into());
        return Ok(r);
    }
    if let Some(d) = p.simplex_degree() {
        r.branch = Branch::PlaneCurve(d);
        r.gonality = d - 1;
        r.clifford = Some(if d >= 5 { d - 4 } else { 1 });
        r.notes.push(NOTE_PLANE.into());
        return Ok(r);
    }
    r.notes.push(NOTE_PLANE_MODEL.into());
    match (g, q) {
        (_, 2) => {
            r.branch = Branch::Hyperelliptic;
            r.gonality = 2;
            r.clifford = Some(0);
            r.pencil_count = PencilCount::Exact(witnesses.len());
            r.pencil_directions = witnesses;
        }
        (4, 4) => {
            r.branch = Branch::Exc4_4;
            r.gonality = 3;
            r.clifford = Some(1);
            r.pencil_count = PencilCount::OneOrTwoNotPolygonDetermined;
            r.notes.push(NOTE_4_4.into());
        }
        (5, 4) => {
            r.branch = Branch::Exc5_4;
            r.gonality = 4;
            r.clifford = Some(2);
            r.notes.push(NOTE_5_4.into());
        }
        (10, 6) => {
            r.branch = Branch::Exc10_6;
            r.gonality = 6;
            r.clifford = Some(3);
            r.notes.push(NOTE_HYPERCUBIC.into());
        }
        _ => {
            r.gonality = q;
            r.clifford = Some(q - 2);
            r.pencil_count = PencilCount::Exact(witnesses.len());
            r.pencil_directions = witnesses;
            r.notes.push(NOTE_FIBRATIONS.into());
        }
    }
    Ok(r)
}

/// Lattice-width directions computing the gonality, on the branches where
/// every gonality pencil comes from a toric fibration.
pub fn gonality_pencil_directions(p: &LatticePolygon) -> Result<Vec<Direction>, CurveError> {
    let r = classify_curve(p)?;
    match r.branch {
        Branch::Generic | Branch::Hyperelliptic => Ok(r.pencil_directions),
        other => Err(CurveError::BranchMismatch(other.to_string())),
    }
}

/// `conv{(0,0),(-3,-6),(-6,-3)}`: genus 10, lattice width 6.
pub fn g10_triangle() -> LatticePolygon {
    polygon(&[(0, 0), (-3, -6), (-6, -3)])
}

/// `conv{(0,0),(4,2),(2,4)}`: genus 4, lattice width 4.
pub fn g4_triangle() -> LatticePolygon {
    polygon(&[(0, 0), (4, 2), (2, 4)])
}

/// For a relatively minimal polygon with `(g, q)` equal to `(10, 6)` or
/// `(4, 4)`, confirms that it is the known triangle.
pub fn exceptional_census_check(p: &LatticePolygon) -> Result<Option<String>, CurveError> {
    if !p.is_full_dimensional() {
        return Err(CurveError::DegeneratePolygon);
    }
    let c = divisor_of_polygon(p).map_err(|_| CurveError::DegeneratePolygon)?;
    if !is_relatively_minimal(&c).expect("divisor of a polygon is nef") {
        return Err(CurveError::NotRelativelyMinimal);
    }
    let (reference, name) = match (p.genus(), lattice_width(p).q) {
        (10, 6) => (g10_triangle(), "conv{(0,0),(-3,-6),(-6,-3)}"),
        (4, 4) => (g4_triangle(), "conv{(0,0),(4,2),(2,4)}"),
        _ => return Ok(None),
    };
    if unimodular_equivalent(p, &reference) {
        Ok(Some(format!("unimodularly equivalent to {name}")))
    } else {
        Err(CurveError::CensusViolation(format!("{p} is not equivalent to {name}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{pr_star, relative_minimalize};
    use crate::polygon::{rectangle, standard_simplex};

    fn d(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    #[test]
    fn genus_ten_triangle() {
        let r = classify_curve(&g10_triangle()).unwrap();
        assert_eq!((r.genus, r.lattice_width, r.q_prime, r.self_intersection), (10, 6, 6, 27));
        assert_eq!((r.gonality, r.clifford), (6, Some(3)));
        assert_eq!(r.pencil_count, PencilCount::Infinite);
        assert_eq!(r.branch, Branch::Exc10_6);
        assert!(r.notes.iter().any(|n| n == NOTE_HYPERCUBIC));
    }

    #[test]
    fn genus_four_triangle() {
        let r = classify_curve(&g4_triangle()).unwrap();
        assert_eq!((r.genus, r.lattice_width, r.self_intersection), (4, 4, 12));
        assert_eq!((r.gonality, r.clifford), (3, Some(1)));
        assert_eq!(r.pencil_count, PencilCount::OneOrTwoNotPolygonDetermined);
    }

    #[test]
    fn rectangles() {
        let r = classify_curve(&rectangle(5, 3)).unwrap();
        assert_eq!((r.genus, r.lattice_width, r.gonality, r.clifford), (8, 3, 3, Some(1)));
        assert_eq!(r.pencil_directions, vec![d(0, 1)]);
        assert_eq!(gonality_pencil_directions(&rectangle(3, 3)).unwrap(), vec![d(0, 1), d(1, 0)]);
        assert_eq!(gonality_pencil_directions(&rectangle(5, 3)).unwrap().len(), 1);
    }

    #[test]
    fn plane_curves() {
        let r = classify_curve(&standard_simplex(5)).unwrap();
        assert_eq!(r.branch, Branch::PlaneCurve(5));
        assert_eq!((r.gonality, r.clifford), (4, Some(1)));
        let r = classify_curve(&standard_simplex(4)).unwrap();
        assert_eq!((r.genus, r.gonality, r.clifford), (3, 3, Some(1)));
        assert!(matches!(gonality_pencil_directions(&standard_simplex(6)), Err(CurveError::BranchMismatch(_))));
    }

    #[test]
    fn low_genus() {
        let r = classify_curve(&standard_simplex(3)).unwrap();
        assert_eq!((r.branch, r.gonality, r.clifford), (Branch::LowGenus(1), 2, None));
        let r = classify_curve(&rectangle(1, 1)).unwrap();
        assert_eq!((r.branch, r.gonality), (Branch::LowGenus(0), 1));
    }

    #[test]
    fn hyperelliptic() {
        let r = classify_curve(&rectangle(6, 2)).unwrap();
        assert_eq!((r.branch, r.gonality, r.clifford), (Branch::Hyperelliptic, 2, Some(0)));
        assert_eq!(r.pencil_count, PencilCount::Exact(1));
    }

    #[test]
    fn trigonal_case_i_polygon() {
        let p = polygon(&[(0, 3), (1, 0), (9, 0)]);
        assert_eq!(gonality_pencil_directions(&p).unwrap(), vec![d(0, 1)]);
    }

    #[test]
    fn pencil_directions_are_fibration_axes() {
        for p in [rectangle(5, 3), rectangle(4, 4), polygon(&[(0, 3), (1, 0), (9, 0)])] {
            let axes = pr_star(divisor_of_polygon(&p).unwrap().fan());
            for dir in gonality_pencil_directions(&p).unwrap() {
                assert!(axes.contains(&dir));
            }
        }
    }

    #[test]
    fn census_check() {
        assert!(exceptional_census_check(&g10_triangle()).unwrap().is_some());
        assert!(exceptional_census_check(&g4_triangle()).unwrap().is_some());
        let sheared = g4_triangle().apply_unimodular(&[[1, 3], [0, 1]], (7, -2).into()).unwrap();
        assert!(exceptional_census_check(&sheared).unwrap().is_some());
        assert_eq!(exceptional_census_check(&rectangle(5, 3)).unwrap(), None);
    }

    #[test]
    fn census_check_is_relative_minimal_only() {
        // a unit edge on a (-1)-ray: not relatively minimal
        let p = polygon(&[(0, 0), (4, 0), (4, 2), (3, 3), (0, 3)]);
        let c = divisor_of_polygon(&p).unwrap();
        assert!(!relative_minimalize(&c).unwrap().1.is_empty());
        assert_eq!(exceptional_census_check(&p), Err(CurveError::NotRelativelyMinimal));
    }

    #[test]
    fn report_json_keys() {
        let v = serde_json::to_value(classify_curve(&g10_triangle()).unwrap()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        for k in [
            "genus",
            "lattice_width",
            "q_prime",
            "self_intersection",
            "gonality",
            "clifford",
            "pencil_directions",
            "pencil_count",
            "branch",
            "notes",
        ] {
            assert!(keys.contains(&k), "{k}");
        }
        assert_eq!(v["branch"], "exc_10_6");
        assert_eq!(serde_json::to_value(Branch::PlaneCurve(5)).unwrap(), serde_json::json!({"plane_curve": 5}));
    }
}
