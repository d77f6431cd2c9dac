//! Convex lattice polygons.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::lattice::{div_ceil, div_floor, gcd, Direction, LatticePoint};

/// A 2×2 integer matrix acting on column vectors `(z, w)`.
pub type Matrix2 = [[i64; 2]; 2];

pub const IDENTITY: Matrix2 = [[1, 0], [0, 1]];

pub fn det2(m: &Matrix2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolygonKind {
    Point,
    Segment,
    Polygon,
}

/// Convex hull of finitely many lattice points.
///
/// Vertices are stored counter-clockwise starting from the lexicographically
/// smallest one, with no three consecutive vertices collinear. A point has
/// one vertex and a segment two; both are allowed and reported by
/// [`LatticePolygon::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPolygon")]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

/// Wire form; deserialization takes the convex hull.
#[derive(Deserialize)]
struct RawPolygon {
    vertices: Vec<LatticePoint>,
}

impl TryFrom<RawPolygon> for LatticePolygon {
    type Error = GeometryError;

    fn try_from(raw: RawPolygon) -> Result<Self, Self::Error> {
        LatticePolygon::from_points(&raw.vertices)
    }
}

impl LatticePolygon {
    /// Convex hull of `points` (Andrew's monotone chain). No translation is
    /// applied.
    pub fn from_points(points: &[LatticePoint]) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyInput);
        }
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() == 1 {
            return Ok(LatticePolygon { vertices: pts });
        }
        let mut hull: Vec<LatticePoint> = Vec::with_capacity(pts.len() + 1);
        for &p in pts.iter() {
            while hull.len() >= 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        let lower_len = hull.len() + 1;
        for &p in pts.iter().rev().skip(1) {
            while hull.len() >= lower_len && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
        // all points collinear: the chain is [first, last, ...back]
        if hull.len() == 2 || hull.iter().skip(1).all(|&p| turn(hull[0], hull[1], p) == 0) {
            let a = pts[0];
            let b = *pts.last().unwrap();
            return Ok(LatticePolygon { vertices: vec![a, b] });
        }
        Ok(LatticePolygon { vertices: hull })
    }

    /// Builds a polygon from vertices already known to be in convex
    /// counter-clockwise position; rotates them into canonical order.
    pub(crate) fn from_ccw_vertices(mut vertices: Vec<LatticePoint>) -> Self {
        let start = vertices.iter().enumerate().min_by_key(|(_, v)| **v).map(|(i, _)| i).unwrap_or(0);
        vertices.rotate_left(start);
        LatticePolygon { vertices }
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn kind(&self) -> PolygonKind {
        match self.vertices.len() {
            1 => PolygonKind::Point,
            2 => PolygonKind::Segment,
            _ => PolygonKind::Polygon,
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.vertices.len() >= 3
    }

    /// Edges as `(start, end)` pairs in counter-clockwise order. A segment
    /// has two (there and back), a point none.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        let count = if n == 1 { 0 } else { n };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// `n(d)`: the maximum of `d` over the polygon.
    pub fn support_value(&self, d: Direction) -> i64 {
        self.vertices.iter().map(|&v| d.eval(v)).max().expect("non-empty polygon")
    }

    /// `n(d) + n(-d)`.
    pub fn width(&self, d: Direction) -> i64 {
        self.width_vec(d.x(), d.y())
    }

    /// Width along an arbitrary integer covector (not necessarily primitive).
    pub(crate) fn width_vec(&self, x: i64, y: i64) -> i64 {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for v in &self.vertices {
            let t = x * v.z + y * v.w;
            lo = lo.min(t);
            hi = hi.max(t);
        }
        hi - lo
    }

    /// Twice the area, from the shoelace sum. Zero for degenerate polygons.
    pub fn twice_area(&self) -> i64 {
        if !self.is_full_dimensional() {
            return 0;
        }
        self.edges().map(|(a, b)| a.cross(b)).sum()
    }

    /// Self-intersection `C²` of the curve class with this polygon: twice the
    /// area.
    pub fn self_intersection(&self) -> i64 {
        self.twice_area()
    }

    /// Lattice length of edge `i` (from vertex `i` to vertex `i+1`).
    pub fn edge_lattice_length(&self, i: usize) -> Result<i64, GeometryError> {
        let n = self.vertices.len();
        if n < 2 || i >= n {
            return Err(GeometryError::EdgeIndexOutOfRange { index: i, len: if n < 2 { 0 } else { n } });
        }
        let d = self.vertices[(i + 1) % n] - self.vertices[i];
        Ok(gcd(d.z, d.w))
    }

    /// Number of lattice points on the boundary.
    pub fn boundary_count(&self) -> i64 {
        match self.kind() {
            PolygonKind::Point => 1,
            PolygonKind::Segment => {
                let d = self.vertices[1] - self.vertices[0];
                gcd(d.z, d.w) + 1
            }
            PolygonKind::Polygon => self.edges().map(|(a, b)| gcd(b.z - a.z, b.w - a.w)).sum(),
        }
    }

    /// Number of interior lattice points (via Pick's formula).
    pub fn interior_count(&self) -> i64 {
        if !self.is_full_dimensional() {
            return 0;
        }
        (self.twice_area() - self.boundary_count() + 2) / 2
    }

    /// Genus of a general curve with this polygon: the interior point count.
    pub fn genus(&self) -> i64 {
        self.interior_count()
    }

    /// All lattice points, sorted lexicographically.
    pub fn lattice_points(&self) -> Vec<LatticePoint> {
        self.collect_points(false)
    }

    /// Lattice points strictly inside, sorted lexicographically.
    pub fn interior_points(&self) -> Vec<LatticePoint> {
        if !self.is_full_dimensional() {
            return Vec::new();
        }
        self.collect_points(true)
    }

    fn collect_points(&self, strict: bool) -> Vec<LatticePoint> {
        match self.kind() {
            PolygonKind::Point => return self.vertices.clone(),
            PolygonKind::Segment => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                let d = b - a;
                let g = gcd(d.z, d.w);
                let step = LatticePoint::new(d.z / g, d.w / g);
                return (0..=g).map(|t| LatticePoint::new(a.z + t * step.z, a.w + t * step.w)).collect();
            }
            PolygonKind::Polygon => {}
        }
        let (zmin, zmax) = self.z_range();
        let mut out = Vec::new();
        for z in zmin..=zmax {
            if let Some((lo, hi)) = self.column_range(z, strict) {
                out.extend((lo..=hi).map(|w| LatticePoint::new(z, w)));
            }
        }
        out
    }

    fn z_range(&self) -> (i64, i64) {
        let zmin = self.vertices.iter().map(|v| v.z).min().unwrap();
        let zmax = self.vertices.iter().map(|v| v.z).max().unwrap();
        (zmin, zmax)
    }

    /// Integer `w`-range of the polygon on the vertical line at `z`.
    fn column_range(&self, z: i64, strict: bool) -> Option<(i64, i64)> {
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for (a, b) in self.edges() {
            // inside: cross(b - a, p - a) >= 0, i.e. e.z*(w - a.w) - e.w*(z - a.z) >= 0
            let e = b - a;
            let rhs = e.w * (z - a.z) + e.z * a.w; // e.z * w >= rhs (strict: >)
            match e.z.signum() {
                1 => {
                    let bound = if strict { div_floor(rhs, e.z) + 1 } else { div_ceil(rhs, e.z) };
                    lo = lo.max(bound);
                }
                -1 => {
                    let bound = if strict { div_ceil(rhs, e.z) - 1 } else { div_floor(rhs, e.z) };
                    hi = hi.min(bound);
                }
                _ => {
                    // vertical edge: 0 >= rhs required
                    let ok = if strict { 0 > rhs } else { 0 >= rhs };
                    if !ok {
                        return None;
                    }
                }
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.kind() {
            PolygonKind::Point => self.vertices[0] == p,
            PolygonKind::Segment => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                turn(a, b, p) == 0 && p >= a.min(b) && p <= a.max(b)
            }
            PolygonKind::Polygon => self.edges().all(|(a, b)| turn(a, b, p) >= 0),
        }
    }

    pub fn translate(&self, t: LatticePoint) -> LatticePolygon {
        LatticePolygon { vertices: self.vertices.iter().map(|&v| v + t).collect() }
    }

    /// Image under `p ↦ M p + t`, re-canonicalized.
    pub fn apply_unimodular(&self, m: &Matrix2, t: LatticePoint) -> Result<LatticePolygon, GeometryError> {
        let det = det2(m);
        if det != 1 && det != -1 {
            return Err(GeometryError::NotUnimodular { det });
        }
        let image = self
            .vertices
            .iter()
            .map(|v| apply_checked(m, *v, t).ok_or(GeometryError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.reorient(image, det))
    }

    /// Unchecked variant for internal callers whose magnitudes are bounded.
    pub(crate) fn map_unimodular(&self, m: &Matrix2, t: LatticePoint) -> LatticePolygon {
        let image = self.vertices.iter().map(|&v| apply(m, v) + t).collect();
        self.reorient(image, det2(m))
    }

    fn reorient(&self, mut image: Vec<LatticePoint>, det: i64) -> LatticePolygon {
        if det < 0 {
            image.reverse();
        }
        if image.len() == 2 && image[1] < image[0] {
            image.swap(0, 1);
        }
        LatticePolygon::from_ccw_vertices(image)
    }

    /// Translate so that the bounding box has its lower-left corner at the
    /// origin.
    pub fn normalize_translation(&self) -> LatticePolygon {
        let zmin = self.vertices.iter().map(|v| v.z).min().unwrap();
        let wmin = self.vertices.iter().map(|v| v.w).min().unwrap();
        self.translate(LatticePoint::new(-zmin, -wmin))
    }

    /// `(z_min, w_min, z_max, w_max)`.
    pub fn bounding_box(&self) -> (i64, i64, i64, i64) {
        let zs = self.vertices.iter().map(|v| v.z);
        let ws = self.vertices.iter().map(|v| v.w);
        (zs.clone().min().unwrap(), ws.clone().min().unwrap(), zs.max().unwrap(), ws.max().unwrap())
    }

    /// `Some(d)` if the polygon is unimodularly equivalent to
    /// `d·conv{(0,0),(1,0),(0,1)}` with `d >= 1`.
    pub fn simplex_degree(&self) -> Option<i64> {
        if self.vertices.len() != 3 {
            return None;
        }
        let d = self.edge_lattice_length(0).ok()?;
        let all_equal = (1..3).all(|i| self.edge_lattice_length(i).ok() == Some(d));
        (all_equal && self.twice_area() == d * d).then_some(d)
    }

    /// Outward primitive normals of the edges, in counter-clockwise order.
    pub fn edge_normals(&self) -> Vec<Direction> {
        if !self.is_full_dimensional() {
            return Vec::new();
        }
        self.edges().map(|(a, b)| Direction::primitive_of(b.w - a.w, a.z - b.z).expect("distinct vertices")).collect()
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Convenience constructor for tests and examples.
pub fn polygon(points: &[(i64, i64)]) -> LatticePolygon {
    let pts: Vec<LatticePoint> = points.iter().map(|&p| p.into()).collect();
    LatticePolygon::from_points(&pts).expect("non-empty point list")
}

/// `d · conv{(0,0),(1,0),(0,1)}`.
pub fn standard_simplex(d: i64) -> LatticePolygon {
    polygon(&[(0, 0), (d, 0), (0, d)])
}

/// `[0, a] × [0, b]`.
pub fn rectangle(a: i64, b: i64) -> LatticePolygon {
    polygon(&[(0, 0), (a, 0), (a, b), (0, b)])
}

pub(crate) fn turn(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i64 {
    (b - a).cross(c - a)
}

pub(crate) fn apply(m: &Matrix2, p: LatticePoint) -> LatticePoint {
    LatticePoint::new(m[0][0] * p.z + m[0][1] * p.w, m[1][0] * p.z + m[1][1] * p.w)
}

fn apply_checked(m: &Matrix2, p: LatticePoint, t: LatticePoint) -> Option<LatticePoint> {
    let z = m[0][0].checked_mul(p.z)?.checked_add(m[0][1].checked_mul(p.w)?)?.checked_add(t.z)?;
    let w = m[1][0].checked_mul(p.z)?.checked_add(m[1][1].checked_mul(p.w)?)?.checked_add(t.w)?;
    Some(LatticePoint::new(z, w))
}
