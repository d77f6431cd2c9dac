//! Corner offsets of a polygon inscribed in its bounding box.
//!
//! For a polygon whose vertices all sit on the sides of the box
//! `[0, q'] × [0, q]` the four offsets measure how far the polygon stays
//! away from the corners:
//!
//! * `a`: from the top-right corner to the rightmost top point,
//! * `b`: height of the right-side vertex adjacent to the top corner region,
//! * `c`: from the bottom-left corner to the leftmost bottom point,
//! * `e`: from the top-left corner down to the left-side vertex adjacent to
//!   the bottom corner region.
//!
//! When the top and bottom lines each carry a single vertex and no vertical
//! side carries two non-corner vertices, the polygon is the box minus four
//! corner triangles and `2·area = q q' + (a + c - q')(b + e - q)`.

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::lattice::LatticePoint;
use crate::polygon::LatticePolygon;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeParams {
    pub q: i64,
    pub q_prime: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub e: i64,
    /// Whether the closed formula for twice the area applies.
    pub formula_applies: bool,
}

impl ShapeParams {
    /// `q q' + (a + c - q')(b + e - q)`.
    pub fn formula_value(&self) -> i64 {
        self.q * self.q_prime + (self.a + self.c - self.q_prime) * (self.b + self.e - self.q)
    }
}

/// Shape parameters of a polygon translated into `[0, q'] × [0, q]`.
pub fn shape_params(p: &LatticePolygon) -> Result<ShapeParams, GeometryError> {
    if !p.is_full_dimensional() {
        return Err(GeometryError::Degenerate);
    }
    let n = p.num_vertices();
    if !(3..=4).contains(&n) {
        return Err(GeometryError::ShapePrecondition("polygon must have three or four vertices"));
    }
    let (zmin, wmin, q_prime, q) = p.bounding_box();
    if zmin != 0 || wmin != 0 {
        return Err(GeometryError::ShapePrecondition("polygon is not translated into [0,q']x[0,q]"));
    }
    let vs = p.vertices();
    let on_box = |v: &LatticePoint| v.z == 0 || v.z == q_prime || v.w == 0 || v.w == q;
    if !vs.iter().all(on_box) {
        return Err(GeometryError::ShapePrecondition("a vertex lies off the bounding box"));
    }

    let top: Vec<&LatticePoint> = vs.iter().filter(|v| v.w == q).collect();
    let bottom: Vec<&LatticePoint> = vs.iter().filter(|v| v.w == 0).collect();
    let mut right: Vec<i64> = vs.iter().filter(|v| v.z == q_prime).map(|v| v.w).collect();
    let mut left: Vec<i64> = vs.iter().filter(|v| v.z == 0).map(|v| v.w).collect();
    right.sort_unstable();
    left.sort_unstable();

    let a = q_prime - top.iter().map(|v| v.z).max().expect("box side meets polygon");
    let c = bottom.iter().map(|v| v.z).min().expect("box side meets polygon");
    // right side: the highest vertex, unless that is the top-right corner and
    // a lower vertex exists
    let b = match right.as_slice() {
        [.., lower, upper] if *upper == q => *lower,
        [.., upper] => *upper,
        [] => unreachable!("box side meets polygon"),
    };
    // left side: the lowest vertex, unless that is the bottom-left corner and
    // a higher vertex exists
    let e = q - match left.as_slice() {
        [lower, upper, ..] if *lower == 0 => *upper,
        [lower, ..] => *lower,
        [] => unreachable!("box side meets polygon"),
    };

    let non_corner = |ws: &[i64]| ws.iter().filter(|&&w| w != 0 && w != q).count();
    let formula_applies = top.len() == 1 && bottom.len() == 1 && non_corner(&right) <= 1 && non_corner(&left) <= 1;

    Ok(ShapeParams { q, q_prime, a, b, c, e, formula_applies })
}
