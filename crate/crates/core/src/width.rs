//! Lattice width by two-dimensional basis reduction of the width norm, and
//! the width normalization used by the shape analysis.

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::lattice::{unimodular_complement, Direction, LatticePoint};
use crate::polygon::{LatticePolygon, Matrix2, PolygonKind};

/// Directions realizing the lattice width.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witnesses {
    /// Every direction has width zero (the polygon is a point).
    All,
    /// One representative per `±` pair, sorted lexicographically.
    Directions(Vec<Direction>),
}

impl Witnesses {
    pub fn directions(&self) -> &[Direction] {
        match self {
            Witnesses::All => &[],
            Witnesses::Directions(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeWidth {
    pub q: i64,
    pub witnesses: Witnesses,
}

/// Coefficient bound for the search around a reduced basis.
const REDUCED_BOX: i64 = 2;

/// The lattice width `q` of `p` and all directions attaining it.
pub fn lattice_width(p: &LatticePolygon) -> LatticeWidth {
    match p.kind() {
        PolygonKind::Point => LatticeWidth { q: 0, witnesses: Witnesses::All },
        PolygonKind::Segment => {
            let v = p.vertices()[1] - p.vertices()[0];
            let normal = Direction::primitive_of(-v.w, v.z).expect("segment has distinct ends");
            LatticeWidth { q: 0, witnesses: Witnesses::Directions(vec![normal.canonical()]) }
        }
        PolygonKind::Polygon => {
            let (b1, b2) = reduce(p);
            let mut best = i64::MAX;
            let mut found: Vec<Direction> = Vec::new();
            for a in -REDUCED_BOX..=REDUCED_BOX {
                for b in -REDUCED_BOX..=REDUCED_BOX {
                    let (x, y) = (a * b1.0 + b * b2.0, a * b1.1 + b * b2.1);
                    let Ok(dir) = Direction::new(x, y) else { continue };
                    let w = p.width(dir);
                    if w < best {
                        best = w;
                        found.clear();
                    }
                    if w == best {
                        found.push(dir.canonical());
                    }
                }
            }
            found.sort();
            found.dedup();
            LatticeWidth { q: best, witnesses: Witnesses::Directions(found) }
        }
    }
}

/// Gauss–Lagrange reduction of the standard basis with respect to the
/// width norm of a full-dimensional polygon.
fn reduce(p: &LatticePolygon) -> ((i64, i64), (i64, i64)) {
    let norm = |v: (i64, i64)| p.width_vec(v.0, v.1);
    let mut b1 = (1i64, 0i64);
    let mut b2 = (0i64, 1i64);
    if norm(b1) > norm(b2) {
        std::mem::swap(&mut b1, &mut b2);
    }
    loop {
        let t = best_multiple(&norm, b1, b2);
        b2 = (b2.0 - t * b1.0, b2.1 - t * b1.1);
        if norm(b2) >= norm(b1) {
            return (b1, b2);
        }
        std::mem::swap(&mut b1, &mut b2);
    }
}

/// An integer `t` minimizing the convex function `t ↦ N(b2 - t b1)`.
fn best_multiple(norm: &impl Fn((i64, i64)) -> i64, b1: (i64, i64), b2: (i64, i64)) -> i64 {
    let f = |t: i64| norm((b2.0 - t * b1.0, b2.1 - t * b1.1));
    // N(b2 - t b1) >= |t| N(b1) - N(b2), so minimizers satisfy |t| <= 2 N(b2)/N(b1).
    let bound = 2 * norm(b2) / norm(b1).max(1) + 1;
    // smallest t in [-bound, bound] with f(t+1) >= f(t)
    let (mut lo, mut hi) = (-bound, bound);
    while lo < hi {
        let mid = lo + (hi - lo).div_euclid(2);
        if f(mid + 1) >= f(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Result of [`normalize_width`]: `polygon` is the image of the input
/// under `v ↦ matrix·v + translation`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthNormalization {
    pub polygon: LatticePolygon,
    pub matrix: Matrix2,
    pub translation: LatticePoint,
    pub q: i64,
    pub q_prime: i64,
}

/// Moves a full-dimensional polygon so that its lattice width is attained
/// vertically, both coordinates start at zero, and the horizontal width
/// `q'` is as small as possible. Ties are broken by the lexicographically
/// smallest vertex list.
pub fn normalize_width(p: &LatticePolygon) -> Result<WidthNormalization, GeometryError> {
    if !p.is_full_dimensional() {
        return Err(GeometryError::Degenerate);
    }
    let lw = lattice_width(p);
    let mut candidates: Vec<(i64, Matrix2)> = Vec::new();
    for &d in lw.witnesses.directions() {
        for row2 in [d, -d] {
            let u0 = unimodular_complement(row2);
            // q'(t) = width along u0 + t*row2, convex in t
            let f = |t: i64| p.width_vec(u0.x() + t * row2.x(), u0.y() + t * row2.y());
            let t0 = best_multiple(&|v: (i64, i64)| p.width_vec(v.0, v.1), (-row2.x(), -row2.y()), (u0.x(), u0.y()));
            let best = f(t0);
            let mut ts = vec![t0];
            let mut t = t0 - 1;
            while f(t) == best {
                ts.push(t);
                t -= 1;
            }
            let mut t = t0 + 1;
            while f(t) == best {
                ts.push(t);
                t += 1;
            }
            for t in ts {
                let u = (u0.x() + t * row2.x(), u0.y() + t * row2.y());
                for s in [1, -1] {
                    candidates.push((best, [[s * u.0, s * u.1], [row2.x(), row2.y()]]));
                }
            }
        }
    }
    let q_prime = candidates.iter().map(|c| c.0).min().expect("a witness exists");
    let mut best: Option<WidthNormalization> = None;
    for (_, m) in candidates.into_iter().filter(|c| c.0 == q_prime) {
        let image = p.map_unimodular(&m, LatticePoint::ORIGIN);
        let (zmin, wmin, _, _) = image.bounding_box();
        let t = LatticePoint::new(-zmin, -wmin);
        let image = image.translate(t);
        let better = match &best {
            None => true,
            Some(b) => image.vertices() < b.polygon.vertices(),
        };
        if better {
            best = Some(WidthNormalization { polygon: image, matrix: m, translation: t, q: lw.q, q_prime });
        }
    }
    Ok(best.expect("at least one candidate"))
}
