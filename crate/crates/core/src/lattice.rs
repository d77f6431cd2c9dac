//! Lattice points, primitive directions and the integer helpers shared by
//! every other module.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// Largest absolute coordinate accepted from external input.
///
/// Keeps every product formed by the algorithms (support values, shoelace
/// sums, reduction steps) well inside `i64`.
pub const COORD_LIMIT: i64 = 1 << 24;

/// A point of the lattice `Z²`, written `(z, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticePoint {
    pub z: i64,
    pub w: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { z: 0, w: 0 };

    pub const fn new(z: i64, w: i64) -> Self {
        LatticePoint { z, w }
    }

    /// `self.z * other.w - self.w * other.z`.
    pub fn cross(self, other: LatticePoint) -> i64 {
        self.z * other.w - self.w * other.z
    }

    pub fn within_limit(self) -> bool {
        self.z.abs() <= COORD_LIMIT && self.w.abs() <= COORD_LIMIT
    }
}

impl From<[i64; 2]> for LatticePoint {
    fn from(a: [i64; 2]) -> Self {
        LatticePoint::new(a[0], a[1])
    }
}

impl From<LatticePoint> for [i64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.z, p.w]
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from(t: (i64, i64)) -> Self {
        LatticePoint::new(t.0, t.1)
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;

    fn add(self, other: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.z + other.z, self.w + other.w)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;

    fn sub(self, other: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.z - other.z, self.w - other.w)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;

    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.z, -self.w)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.z, self.w)
    }
}

/// A primitive integer covector `(x, y)`.
///
/// Primitive in the extended sense: if one entry is zero the other is `±1`,
/// otherwise `gcd(|x|, |y|) = 1`. The zero vector is never a direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct Direction {
    x: i64,
    y: i64,
}

impl Direction {
    pub fn new(x: i64, y: i64) -> Result<Self, GeometryError> {
        if gcd(x, y) == 1 {
            Ok(Direction { x, y })
        } else {
            Err(GeometryError::NotPrimitive { x, y })
        }
    }

    /// The primitive direction of a nonzero integer vector.
    pub fn primitive_of(x: i64, y: i64) -> Option<Self> {
        let g = gcd(x, y);
        (g != 0).then(|| Direction { x: x / g, y: y / g })
    }

    pub(crate) const fn new_unchecked(x: i64, y: i64) -> Self {
        Direction { x, y }
    }

    pub fn x(self) -> i64 {
        self.x
    }

    pub fn y(self) -> i64 {
        self.y
    }

    /// Value of the linear form at `p`.
    pub fn eval(self, p: LatticePoint) -> i64 {
        self.x * p.z + self.y * p.w
    }

    pub fn as_point(self) -> LatticePoint {
        LatticePoint::new(self.x, self.y)
    }

    /// Representative of the `±` class: `x > 0`, or `x = 0` and `y > 0`.
    pub fn canonical(self) -> Direction {
        if self.x > 0 || (self.x == 0 && self.y > 0) {
            self
        } else {
            -self
        }
    }

    /// `det [self; other]`.
    pub fn det(self, other: Direction) -> i64 {
        self.x * other.y - self.y * other.x
    }

    /// Compare by polar angle in `[0, 2π)` measured from `(1, 0)`.
    pub fn angle_cmp(self, other: Direction) -> Ordering {
        let half = |d: Direction| if d.y > 0 || (d.y == 0 && d.x > 0) { 0 } else { 1 };
        half(self).cmp(&half(other)).then_with(|| 0.cmp(&self.det(other)))
    }
}

impl TryFrom<[i64; 2]> for Direction {
    type Error = GeometryError;

    fn try_from(a: [i64; 2]) -> Result<Self, Self::Error> {
        Direction::new(a[0], a[1])
    }
}

impl From<Direction> for [i64; 2] {
    fn from(d: Direction) -> Self {
        [d.x, d.y]
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on `(x, y)`.
impl Ord for Direction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.x, self.y).cmp(&(other.x, other.y))
    }
}

impl Neg for Direction {
    type Output = Direction;

    fn neg(self) -> Direction {
        Direction { x: -self.x, y: -self.y }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Non-negative gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

/// Returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// A covector `u` with `det [u; d] = u.x*d.y - u.y*d.x = 1`.
pub fn unimodular_complement(d: Direction) -> Direction {
    // s*y + t*(-x) = 1  =>  u = (s, t)
    let (g, s, t) = ext_gcd(d.y, -d.x);
    debug_assert_eq!(g, 1);
    Direction::new_unchecked(s, t)
}

pub fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

pub fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_coprimality() {
        assert!(Direction::new(0, 1).is_ok());
        assert!(Direction::new(-1, 0).is_ok());
        assert!(Direction::new(0, 2).is_err());
        assert!(Direction::new(0, 0).is_err());
        assert!(Direction::new(2, -4).is_err());
        assert!(Direction::new(3, -5).is_ok());
    }

    #[test]
    fn complement_has_unit_determinant() {
        for (x, y) in [(1, 0), (0, 1), (2, -1), (-3, 7), (5, 8), (-1, -1)] {
            let d = Direction::new(x, y).unwrap();
            let u = unimodular_complement(d);
            assert_eq!(u.det(d), 1, "{d}");
        }
    }

    #[test]
    fn floor_and_ceil_division() {
        assert_eq!(div_floor(7, 2), 3);
        assert_eq!(div_floor(-7, 2), -4);
        assert_eq!(div_floor(7, -2), -4);
        assert_eq!(div_ceil(7, 2), 4);
        assert_eq!(div_ceil(-7, 2), -3);
        assert_eq!(div_ceil(6, 3), 2);
    }

    #[test]
    fn angle_order() {
        let d = |x, y| Direction::new(x, y).unwrap();
        let mut v = vec![d(0, -1), d(-1, 0), d(1, 1), d(1, 0), d(0, 1), d(1, -1)];
        v.sort_by(|a, b| a.angle_cmp(*b));
        assert_eq!(v, vec![d(1, 0), d(1, 1), d(0, 1), d(-1, 0), d(0, -1), d(1, -1)]);
    }
}
