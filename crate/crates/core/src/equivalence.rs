//! Unimodular equivalence of lattice polygons.
//!
//! Two polygons are equivalent when an affine map `v ↦ M v + t` with
//! `M ∈ GL₂(Z)` carries one onto the other. The canonical form below is
//! exact: for every vertex and each of its two edges there is exactly one
//! unimodular map sending the vertex to the origin, that edge along the
//! positive `z`-axis and the other edge into the upper half-plane with its
//! `z`-coordinate reduced modulo its height. The canonical form is the
//! smallest resulting sorted vertex set.

use crate::lattice::{ext_gcd, gcd, LatticePoint};
use crate::polygon::{apply, LatticePolygon, Matrix2, PolygonKind};

/// Sorted vertex set of the canonical representative.
pub fn canonical_form(p: &LatticePolygon) -> Vec<LatticePoint> {
    let vs = p.vertices();
    match p.kind() {
        PolygonKind::Point => vec![LatticePoint::ORIGIN],
        PolygonKind::Segment => {
            let d = vs[1] - vs[0];
            vec![LatticePoint::ORIGIN, LatticePoint::new(gcd(d.z, d.w), 0)]
        }
        PolygonKind::Polygon => {
            let n = vs.len();
            let mut best: Option<Vec<LatticePoint>> = None;
            for i in 0..n {
                let prev = vs[(i + n - 1) % n] - vs[i];
                let next = vs[(i + 1) % n] - vs[i];
                for (base, other) in [(next, prev), (prev, next)] {
                    let m = frame(base, other);
                    let mut image: Vec<LatticePoint> = vs.iter().map(|&v| apply(&m, v - vs[i])).collect();
                    image.sort_unstable();
                    if best.as_ref().is_none_or(|b| image < *b) {
                        best = Some(image);
                    }
                }
            }
            best.expect("polygon has vertices")
        }
    }
}

/// The unique `M ∈ GL₂(Z)` with `M base` on the positive `z`-axis,
/// `M other` in the upper half-plane and `0 <= (M other).z < (M other).w`.
fn frame(base: LatticePoint, other: LatticePoint) -> Matrix2 {
    let g = gcd(base.z, base.w);
    let (x, y) = (base.z / g, base.w / g);
    let (_, s, t) = ext_gcd(x, y); // s x + t y = 1
    let mut row2 = (-y, x);
    if row2.0 * other.z + row2.1 * other.w < 0 {
        row2 = (y, -x);
    }
    let h = row2.0 * other.z + row2.1 * other.w;
    let r = s * other.z + t * other.w;
    let k = -r.div_euclid(h);
    [[s + k * row2.0, t + k * row2.1], [row2.0, row2.1]]
}

pub fn unimodular_equivalent(p: &LatticePolygon, q: &LatticePolygon) -> bool {
    p.num_vertices() == q.num_vertices() && p.twice_area() == q.twice_area() && canonical_form(p) == canonical_form(q)
}

/// The unimodular class of `p` as a polygon, for reporting.
pub fn canonical_polygon(p: &LatticePolygon) -> LatticePolygon {
    LatticePolygon::from_points(&canonical_form(p)).expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{det2, polygon, standard_simplex};

    #[test]
    fn frame_is_unimodular_and_normalizing() {
        let cases = [((4, 2), (-2, 2)), ((-3, -6), (-6, -3)), ((1, 0), (0, 1)), ((2, -1), (-5, 7))];
        for ((bz, bw), (oz, ow)) in cases {
            let base = LatticePoint::new(bz, bw);
            let other = LatticePoint::new(oz, ow);
            let m = frame(base, other);
            assert_eq!(det2(&m).abs(), 1);
            let b = apply(&m, base);
            assert_eq!(b.w, 0);
            assert!(b.z > 0);
            let o = apply(&m, other);
            assert!(o.w > 0 && 0 <= o.z && o.z < o.w, "{o:?}");
        }
    }

    #[test]
    fn shear_images_of_simplex_are_equivalent() {
        let s = standard_simplex(3);
        for k in -3..=3 {
            let img = s.apply_unimodular(&[[1, k], [0, 1]], LatticePoint::new(k, 2 * k)).unwrap();
            assert!(unimodular_equivalent(&s, &img));
        }
    }

    #[test]
    fn reflection_counts_as_equivalence() {
        let t = polygon(&[(0, 0), (3, 1), (1, 2)]);
        let r = t.apply_unimodular(&[[0, 1], [1, 0]], LatticePoint::ORIGIN).unwrap();
        assert!(unimodular_equivalent(&t, &r));
    }

    #[test]
    fn fig13_triangles() {
        let a = polygon(&[(0, 0), (4, 2), (2, 4)]);
        let b = polygon(&[(0, 2), (2, 0), (4, 4)]);
        assert!(unimodular_equivalent(&a, &b));
        let c = polygon(&[(0, 4), (4, 4), (2, 0)]);
        assert!(!unimodular_equivalent(&a, &c));
    }

    #[test]
    fn same_invariants_different_class() {
        // both have twice-area 4 and four boundary points... but differ
        let p = polygon(&[(0, 0), (2, 0), (0, 2)]);
        let q = polygon(&[(0, 0), (4, 0), (0, 1)]);
        assert_eq!(p.twice_area(), q.twice_area());
        assert!(!unimodular_equivalent(&p, &q));
    }
}
