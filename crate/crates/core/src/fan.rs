//! Smooth complete fans, toric divisors and the polygon of a divisor.
//!
//! Rays are stored counter-clockwise starting from the ray of smallest
//! polar angle in `[0, 2π)`; every index reported by this module refers to
//! that order. A divisor `Σ nᵢ Dᵢ` has polygon
//! `{ (z, w) : xᵢ z + yᵢ w ≤ nᵢ for all i }`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::FanError;
use crate::lattice::{div_ceil, div_floor, gcd, unimodular_complement, Direction, LatticePoint};
use crate::polygon::LatticePolygon;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fan {
    rays: Vec<Direction>,
}

impl Fan {
    pub fn rays(&self) -> &[Direction] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn ray(&self, i: usize) -> Direction {
        self.rays[i % self.rays.len()]
    }

    fn prev(&self, i: usize) -> Direction {
        self.ray(i + self.rays.len() - 1)
    }

    fn next(&self, i: usize) -> Direction {
        self.ray(i + 1)
    }

    /// Index of `d` among the rays.
    pub fn position(&self, d: Direction) -> Option<usize> {
        self.rays.iter().position(|&r| r == d)
    }

    fn check_index(&self, i: usize) -> Result<(), FanError> {
        if i < self.rays.len() {
            Ok(())
        } else {
            Err(FanError::RayIndexOutOfRange { index: i })
        }
    }
}

impl<'de> Deserialize<'de> for Fan {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rays: Vec<[i64; 2]>,
        }
        let raw = Raw::deserialize(de)?;
        validate_fan(&raw.rays).map_err(serde::de::Error::custom)
    }
}

/// Primitive, pairwise distinct rays in cyclic angular order (either
/// orientation), sorted counter-clockwise, together with the input index
/// of every sorted ray.
fn complete_rays(raw: &[[i64; 2]]) -> Result<(Vec<Direction>, Vec<usize>), FanError> {
    let mut rays = Vec::with_capacity(raw.len());
    for (index, r) in raw.iter().enumerate() {
        let d = Direction::new(r[0], r[1]).map_err(|_| FanError::NonPrimitiveRay { index })?;
        if rays.contains(&d) {
            return Err(FanError::DuplicateRay { index });
        }
        rays.push(d);
    }
    if rays.len() < 3 {
        return Err(FanError::TooFewRays);
    }
    let k = rays.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| rays[a].angle_cmp(rays[b]));
    let p = order.iter().position(|&i| i == 0).expect("ray 0 is present");
    let ccw = (0..k).all(|i| order[(p + i) % k] == i);
    let cw = (0..k).all(|i| order[(p + k - i) % k] == i);
    if !ccw && !cw {
        let index = (0..k).find(|&i| order[(p + i) % k] != i).unwrap_or(0);
        return Err(FanError::NotCounterClockwise { index });
    }
    let sorted: Vec<Direction> = order.iter().map(|&i| rays[i]).collect();
    for i in 0..k {
        let (a, b) = (sorted[i], sorted[(i + 1) % k]);
        if a.det(b) <= 0 {
            return Err(FanError::NotComplete { index: order[i], next: order[(i + 1) % k] });
        }
    }
    Ok((sorted, order))
}

/// Checks that `rays` form a smooth complete fan. Rays may be listed
/// clockwise or counter-clockwise; the result is stored counter-clockwise.
pub fn validate_fan(rays: &[[i64; 2]]) -> Result<Fan, FanError> {
    let (sorted, order) = complete_rays(rays)?;
    let k = sorted.len();
    for i in 0..k {
        let det = sorted[i].det(sorted[(i + 1) % k]);
        if det != 1 {
            return Err(FanError::NotSmooth { index: order[i], next: order[(i + 1) % k], det });
        }
    }
    Ok(Fan { rays: sorted })
}

/// Minimal smooth refinement: every cone of determinant `n > 1` is
/// subdivided along the boundary of the convex hull of its nonzero lattice
/// points (Hirzebruch–Jung).
pub fn smooth_refine(rays: &[[i64; 2]]) -> Result<Fan, FanError> {
    let (sorted, _) = complete_rays(rays)?;
    Ok(refine_sorted(&sorted))
}

fn refine_sorted(sorted: &[Direction]) -> Fan {
    let k = sorted.len();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let v = sorted[(i + 1) % k];
        let mut u = sorted[i];
        out.push(u);
        while u.det(v) > 1 {
            // lattice points with det(u, w) = 1 are u' + t u; take the one
            // closest to v inside the cone
            let u1 = -unimodular_complement(u);
            let c = Direction::new_unchecked(u1.x(), u1.y()).det(v);
            let t = div_ceil(-c, u.det(v));
            let w = Direction::new_unchecked(u1.x() + t * u.x(), u1.y() + t * u.y());
            debug_assert_eq!(u.det(w), 1);
            out.push(w);
            u = w;
        }
    }
    let start = out.iter().enumerate().min_by(|a, b| a.1.angle_cmp(*b.1)).map(|(i, _)| i).unwrap_or(0);
    out.rotate_left(start);
    Fan { rays: out }
}

/// `D_i²`, from `v_{i-1} + v_{i+1} = a v_i`.
pub fn ray_self_intersection(f: &Fan, i: usize) -> Result<i64, FanError> {
    f.check_index(i)?;
    let v = f.ray(i);
    let s = f.prev(i).as_point() + f.next(i).as_point();
    let a = if v.x() != 0 { s.z / v.x() } else { s.w / v.y() };
    Ok(-a)
}

/// `D_i · D_j` on the toric surface of `f`.
pub fn ray_intersection(f: &Fan, i: usize, j: usize) -> Result<i64, FanError> {
    f.check_index(i)?;
    f.check_index(j)?;
    let k = f.len();
    if i == j {
        ray_self_intersection(f, i)
    } else if (i + 1) % k == j || (j + 1) % k == i {
        Ok(1)
    } else {
        Ok(0)
    }
}

/// Intersection number of `Σ aᵢ Dᵢ` and `Σ bⱼ Dⱼ`.
pub fn intersection_number(f: &Fan, a: &[i64], b: &[i64]) -> Result<i64, FanError> {
    let k = f.len();
    for c in [a, b] {
        if c.len() != k {
            return Err(FanError::CoefficientCount { rays: k, coeffs: c.len() });
        }
    }
    let mut total = 0;
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            total += ai * bj * ray_intersection(f, i, j)?;
        }
    }
    Ok(total)
}

/// Rays whose negation is also a ray, one representative per `±` pair.
pub fn pr_star(f: &Fan) -> Vec<Direction> {
    let mut out: Vec<Direction> = f.rays.iter().filter(|&&r| f.rays.contains(&-r)).map(|r| r.canonical()).collect();
    out.sort();
    out.dedup();
    out
}

/// `M(u, v)`: indices `j` with `u y_j - v x_j < 0`.
pub fn m_set(f: &Fan, u: i64, v: i64) -> Vec<usize> {
    f.rays.iter().enumerate().filter(|(_, r)| u * r.y() - v * r.x() < 0).map(|(j, _)| j).collect()
}

/// A divisor `Σ nᵢ Dᵢ` on the toric surface of a smooth complete fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricDivisor {
    fan: Fan,
    coeffs: Vec<i64>,
    polygon: Option<LatticePolygon>,
}

impl ToricDivisor {
    pub fn new(fan: Fan, coeffs: Vec<i64>) -> Result<Self, FanError> {
        if coeffs.len() != fan.len() {
            return Err(FanError::CoefficientCount { rays: fan.len(), coeffs: coeffs.len() });
        }
        let polygon = lattice_polygon_of(&fan, &coeffs);
        Ok(ToricDivisor { fan, coeffs, polygon })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// The polygon `□_D`, or `None` when it contains no lattice point.
    pub fn polygon(&self) -> Option<&LatticePolygon> {
        self.polygon.as_ref()
    }

    /// Nef iff every coefficient equals the support value of `□_D`.
    pub fn is_nef(&self) -> bool {
        self.first_non_nef().is_none()
    }

    fn first_non_nef(&self) -> Option<usize> {
        match &self.polygon {
            None => Some(0),
            Some(p) => (0..self.fan.len()).find(|&i| p.support_value(self.fan.rays[i]) != self.coeffs[i]),
        }
    }

    fn nef_polygon(&self) -> Result<&LatticePolygon, FanError> {
        match self.first_non_nef() {
            Some(index) => Err(FanError::NotNef { index }),
            None => Ok(self.polygon.as_ref().expect("nef divisor has a polygon")),
        }
    }
}

impl Serialize for ToricDivisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            rays: &'a [Direction],
            coeffs: &'a [i64],
        }
        Raw { rays: &self.fan.rays, coeffs: &self.coeffs }.serialize(s)
    }
}

/// `□_D` for a divisor on `fan`.
pub fn polygon_of_divisor(d: &ToricDivisor) -> Result<LatticePolygon, FanError> {
    d.polygon.clone().ok_or(FanError::EmptyPolytope)
}

/// Vertices of the rational polygon as exact fractions `(z_num, w_num, den)`
/// with `den > 0`.
fn rational_vertices(rays: &[Direction], n: &[i64]) -> Vec<(i128, i128, i128)> {
    let k = rays.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (rays[i], rays[j]);
            let mut den = a.det(b) as i128;
            if den == 0 {
                continue;
            }
            // a·p = n_i, b·p = n_j
            let mut zn = n[i] as i128 * b.y() as i128 - n[j] as i128 * a.y() as i128;
            let mut wn = a.x() as i128 * n[j] as i128 - b.x() as i128 * n[i] as i128;
            if den < 0 {
                (zn, wn, den) = (-zn, -wn, -den);
            }
            let feasible = rays.iter().zip(n).all(|(r, &c)| r.x() as i128 * zn + r.y() as i128 * wn <= c as i128 * den);
            if feasible {
                out.push((zn, wn, den));
            }
        }
    }
    out
}

fn lattice_polygon_of(fan: &Fan, n: &[i64]) -> Option<LatticePolygon> {
    let verts = rational_vertices(&fan.rays, n);
    if verts.is_empty() {
        return None;
    }
    if verts.iter().all(|&(z, w, d)| z % d == 0 && w % d == 0) {
        let pts: Vec<LatticePoint> =
            verts.iter().map(|&(z, w, d)| LatticePoint::new((z / d) as i64, (w / d) as i64)).collect();
        return LatticePolygon::from_points(&pts).ok();
    }
    // rational vertices: hull of the lattice points, row by row
    let floor = |a: i128, b: i128| a.div_euclid(b) as i64;
    let zlo = verts.iter().map(|&(z, _, d)| -floor(-z, d)).min().expect("non-empty");
    let zhi = verts.iter().map(|&(z, _, d)| floor(z, d)).max().expect("non-empty");
    let mut pts = Vec::new();
    for z in zlo..=zhi {
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for (r, &c) in fan.rays.iter().zip(n) {
            let rhs = c - r.x() * z;
            match r.y().cmp(&0) {
                Ordering::Greater => hi = hi.min(div_floor(rhs, r.y())),
                Ordering::Less => lo = lo.max(div_ceil(rhs, r.y())),
                Ordering::Equal => {
                    if rhs < 0 {
                        hi = i64::MIN;
                    }
                }
            }
        }
        if lo <= hi {
            pts.push(LatticePoint::new(z, lo));
            pts.push(LatticePoint::new(z, hi));
        }
    }
    LatticePolygon::from_points(&pts).ok()
}

/// The divisor of a full-dimensional polygon on the minimal smooth
/// refinement of its normal fan. Nef by construction.
pub fn divisor_of_polygon(p: &LatticePolygon) -> Result<ToricDivisor, FanError> {
    if !p.is_full_dimensional() {
        return Err(FanError::DegeneratePolygon);
    }
    let mut normals = p.edge_normals();
    normals.sort_by(|a, b| a.angle_cmp(*b));
    let fan = refine_sorted(&normals);
    let coeffs = fan.rays.iter().map(|&r| p.support_value(r)).collect();
    Ok(ToricDivisor { fan, coeffs, polygon: Some(p.clone()) })
}

/// `C · D_i`: lattice length of the face of `□_C` on which ray `i` is tight.
pub fn curve_ray_intersection(c: &ToricDivisor, i: usize) -> Result<i64, FanError> {
    c.fan.check_index(i)?;
    let p = c.nef_polygon()?;
    Ok(face_length(p, c.fan.rays[i], c.coeffs[i]))
}

fn face_length(p: &LatticePolygon, r: Direction, n: i64) -> i64 {
    let tight: Vec<LatticePoint> = p.vertices().iter().copied().filter(|&v| r.eval(v) == n).collect();
    match tight.as_slice() {
        [a, .., b] => {
            let d = *b - *a;
            gcd(d.z, d.w)
        }
        _ => 0,
    }
}

/// `C · D_i` for every ray.
pub fn curve_ray_intersections(c: &ToricDivisor) -> Result<Vec<i64>, FanError> {
    let p = c.nef_polygon()?;
    Ok(c.fan.rays.iter().zip(&c.coeffs).map(|(&r, &n)| face_length(p, r, n)).collect())
}

/// `Σ_{j ∈ M(d)} (x_j d.y - y_j d.x) C·D_j`, the width of `□_C` along `d`.
pub fn width_via_fan(c: &ToricDivisor, d: Direction) -> Result<i64, FanError> {
    let lengths = curve_ray_intersections(c)?;
    let m = m_set(&c.fan, d.x(), d.y());
    assert!(!m.is_empty(), "a complete fan has rays on both sides of every line");
    Ok(m.into_iter()
        .map(|j| {
            let r = c.fan.rays[j];
            (r.x() * d.y() - r.y() * d.x()) * lengths[j]
        })
        .sum())
}

/// `C²` as `Σ nᵢ (C · Dᵢ)`.
pub fn self_intersection(c: &ToricDivisor) -> Result<i64, FanError> {
    let lengths = curve_ray_intersections(c)?;
    Ok(c.coeffs.iter().zip(&lengths).map(|(n, l)| n * l).sum())
}

/// Genus from adjunction, `1 + (C² + C·K)/2` with `C·K = -Σ C·Dᵢ`.
pub fn adjunction_genus(c: &ToricDivisor) -> Result<i64, FanError> {
    let ck: i64 = -curve_ray_intersections(c)?.iter().sum::<i64>();
    Ok(1 + (self_intersection(c)? + ck) / 2)
}

/// `K = -Σ Dᵢ`.
pub fn canonical_divisor(f: &Fan) -> ToricDivisor {
    ToricDivisor::new(f.clone(), vec![-1; f.len()]).expect("one coefficient per ray")
}

/// Fibre class of the toric fibration along `axis`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationFiber {
    pub axis: Direction,
    /// `|β_j|` on the rays of `M(axis)`, zero elsewhere.
    pub coeffs: Vec<i64>,
}

impl FibrationFiber {
    /// `F · C`.
    pub fn degree(&self, c: &ToricDivisor) -> Result<i64, FanError> {
        let lengths = curve_ray_intersections(c)?;
        Ok(self.coeffs.iter().zip(&lengths).map(|(a, l)| a * l).sum())
    }
}

/// One fibration per `±` pair of `pr_star`. Writing `v_j = α_j v_i + β_j
/// v_{i+1}` gives `β_j = det(v_i, v_j)`.
pub fn toric_fibrations(f: &Fan) -> Result<Vec<FibrationFiber>, FanError> {
    let axes = pr_star(f);
    if axes.is_empty() {
        return Err(FanError::NoFibrations);
    }
    Ok(axes
        .into_iter()
        .map(|axis| {
            let m = m_set(f, axis.x(), axis.y());
            let mut coeffs = vec![0; f.len()];
            for j in m {
                coeffs[j] = axis.det(f.rays[j]).abs();
            }
            FibrationFiber { axis, coeffs }
        })
        .collect())
}

/// No ray with `D² = -1` meets `C` in fewer than two points.
pub fn is_relatively_minimal(c: &ToricDivisor) -> Result<bool, FanError> {
    Ok(contractible_rays(c)?.is_empty())
}

fn contractible_rays(c: &ToricDivisor) -> Result<Vec<usize>, FanError> {
    let lengths = curve_ray_intersections(c)?;
    let mut out = Vec::new();
    if c.fan.len() <= 3 {
        return Ok(out);
    }
    for (i, &l) in lengths.iter().enumerate() {
        if l <= 1 && ray_self_intersection(&c.fan, i)? == -1 {
            out.push(i);
        }
    }
    Ok(out)
}

/// Blows down `(-1)`-rays meeting `C` at most once, lowest index first,
/// until none is left. Returns the new divisor and the removed rays.
///
/// The remaining coefficients are kept. When `C · Dᵢ = 0` the polygon is
/// unchanged; when it is 1 the polygon gains the corner triangle cut off by
/// that edge, `C²` grows by one and the genus is unchanged.
pub fn relative_minimalize(c: &ToricDivisor) -> Result<(ToricDivisor, Vec<Direction>), FanError> {
    minimalize_by(c, |cands| cands[0])
}

pub(crate) fn minimalize_by(
    c: &ToricDivisor,
    mut pick: impl FnMut(&[usize]) -> usize,
) -> Result<(ToricDivisor, Vec<Direction>), FanError> {
    let mut cur = c.clone();
    let mut removed = Vec::new();
    loop {
        let cands = contractible_rays(&cur)?;
        if cands.is_empty() {
            return Ok((cur, removed));
        }
        let i = pick(&cands);
        removed.push(cur.fan.rays[i]);
        let mut rays = cur.fan.rays.clone();
        let mut coeffs = cur.coeffs.clone();
        rays.remove(i);
        coeffs.remove(i);
        let start = rays.iter().enumerate().min_by(|a, b| a.1.angle_cmp(*b.1)).map(|(i, _)| i).unwrap_or(0);
        rays.rotate_left(start);
        coeffs.rotate_left(start);
        let fan = Fan { rays };
        debug_assert!(validate_fan(&fan.rays.iter().map(|&r| r.into()).collect::<Vec<_>>()).is_ok());
        cur = ToricDivisor::new(fan, coeffs)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{polygon, rectangle, standard_simplex};

    fn fan(rays: &[[i64; 2]]) -> Fan {
        validate_fan(rays).unwrap()
    }

    fn p1p1() -> Fan {
        fan(&[[0, 1], [-1, 0], [0, -1], [1, 0]])
    }

    fn p2() -> Fan {
        fan(&[[0, 1], [1, 0], [-1, -1]])
    }

    fn d(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    fn fig12() -> ToricDivisor {
        divisor_of_polygon(&polygon(&[(0, 0), (4, 2), (2, 4)])).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(p1p1().rays(), &[d(1, 0), d(0, 1), d(-1, 0), d(0, -1)]);
        assert_eq!(p2().rays(), &[d(1, 0), d(0, 1), d(-1, -1)]);
        assert!(matches!(validate_fan(&[[0, 1], [2, -1], [-1, -1]]), Err(FanError::NotSmooth { det: 3, .. })));
        // clockwise listing is accepted, the cone (-1,-1),(2,-1) is singular
        assert!(matches!(validate_fan(&[[0, 1], [2, -1], [-1, -1], [-1, 2]]), Err(FanError::NotSmooth { det: 3, .. })));
        assert!(matches!(validate_fan(&[[1, 0], [-1, 0], [0, 1], [0, -1]]), Err(FanError::NotCounterClockwise { .. })));
        assert_eq!(validate_fan(&[[0, 2], [1, 0], [-1, -1]]), Err(FanError::NonPrimitiveRay { index: 0 }));
        assert_eq!(validate_fan(&[[0, 1], [1, 0]]), Err(FanError::TooFewRays));
        assert!(matches!(validate_fan(&[[1, 0], [0, 1], [-1, 0]]), Err(FanError::NotComplete { .. })));
        assert_eq!(validate_fan(&[[1, 0], [0, 1], [1, 0]]), Err(FanError::DuplicateRay { index: 2 }));
    }

    #[test]
    fn smooth_input_is_not_refined() {
        assert_eq!(smooth_refine(&[[0, 1], [-1, 0], [0, -1], [1, 0]]).unwrap(), p1p1());
        assert_eq!(smooth_refine(&[[0, 1], [1, 0], [-1, -1]]).unwrap(), p2());
    }

    #[test]
    fn refinement_is_smooth_and_keeps_rays() {
        let f = smooth_refine(&[[2, -1], [-1, -1], [-1, 2]]).unwrap();
        let raw: Vec<[i64; 2]> = f.rays().iter().map(|&r| r.into()).collect();
        assert!(validate_fan(&raw).is_ok());
        for r in [d(2, -1), d(-1, -1), d(-1, 2)] {
            assert!(f.position(r).is_some());
        }
    }

    #[test]
    fn fig12_fan_has_nine_rays() {
        let c = fig12();
        assert_eq!(c.fan().len(), 9);
        let axes = pr_star(c.fan());
        assert_eq!(axes, vec![d(0, 1), d(1, -1), d(1, 0)]);
        assert!(is_relatively_minimal(&c).unwrap());
        let fibs = toric_fibrations(c.fan()).unwrap();
        assert_eq!(fibs.len(), 3);
        let min = fibs.iter().map(|f| f.degree(&c).unwrap()).min().unwrap();
        assert_eq!(min, 4);
    }

    #[test]
    fn self_intersections_of_rays() {
        for i in 0..3 {
            assert_eq!(ray_self_intersection(&p2(), i).unwrap(), 1);
        }
        for i in 0..4 {
            assert_eq!(ray_self_intersection(&p1p1(), i).unwrap(), 0);
        }
        // blow up P² at the cone (1,0),(0,1)
        let f = fan(&[[1, 0], [1, 1], [0, 1], [-1, -1]]);
        assert_eq!(ray_self_intersection(&f, 1).unwrap(), -1);
        assert_eq!(ray_self_intersection(&p2(), 3), Err(FanError::RayIndexOutOfRange { index: 3 }));
    }

    #[test]
    fn rectangle_divisor() {
        // coefficients along (1,0),(0,1),(-1,0),(0,-1)
        let c = ToricDivisor::new(p1p1(), vec![5, 3, 0, 0]).unwrap();
        assert_eq!(polygon_of_divisor(&c).unwrap(), rectangle(5, 3));
        assert!(c.is_nef());
        let top = p1p1().position(d(0, 1)).unwrap();
        assert_eq!(curve_ray_intersection(&c, top).unwrap(), 5);
        assert_eq!(width_via_fan(&c, d(0, 1)).unwrap(), 3);
        assert_eq!(self_intersection(&c).unwrap(), 30);
        assert_eq!(adjunction_genus(&c).unwrap(), 8);

        let back = divisor_of_polygon(&rectangle(5, 3)).unwrap();
        assert_eq!(back.fan(), &p1p1());
        assert_eq!(back.coeffs(), &[5, 3, 0, 0]);
    }

    #[test]
    fn simplex_divisor_on_p2() {
        let c = ToricDivisor::new(p2(), vec![0, 0, 4]).unwrap();
        let p = polygon_of_divisor(&c).unwrap();
        assert_eq!(p, polygon(&[(0, 0), (-4, 0), (0, -4)]));
        assert_eq!(p.simplex_degree(), Some(4));
    }

    #[test]
    fn canonical_divisor_of_p2_is_empty() {
        let k = canonical_divisor(&p2());
        assert_eq!(k.coeffs(), &[-1, -1, -1]);
        assert_eq!(polygon_of_divisor(&k), Err(FanError::EmptyPolytope));
        assert!(!k.is_nef());
    }

    #[test]
    fn non_nef_divisor() {
        // blown-up P²: z <= 2, z + w <= 10, w <= 2, z + w >= 0; the second is never tight
        let f = fan(&[[1, 0], [1, 1], [0, 1], [-1, -1]]);
        let c = ToricDivisor::new(f, vec![2, 10, 2, 0]).unwrap();
        assert!(!c.is_nef());
        assert_eq!(curve_ray_intersection(&c, 0), Err(FanError::NotNef { index: 1 }));
        assert_eq!(polygon_of_divisor(&c).unwrap(), polygon(&[(2, -2), (2, 2), (-2, 2)]));
    }

    #[test]
    fn rational_polytope_uses_lattice_hull() {
        // Hirzebruch F2 with z <= 1, w <= 1, 2w <= z, w >= 0: vertex (1, 1/2)
        let f = fan(&[[1, 0], [0, 1], [-1, 2], [0, -1]]);
        let c = ToricDivisor::new(f, vec![1, 1, 0, 0]).unwrap();
        assert_eq!(polygon_of_divisor(&c).unwrap(), polygon(&[(0, 0), (1, 0)]));
        assert!(!c.is_nef());
    }

    #[test]
    fn pr_star_and_m_sets() {
        assert_eq!(pr_star(&p1p1()), vec![d(0, 1), d(1, 0)]);
        assert!(pr_star(&p2()).is_empty());
        let f = p1p1();
        let pos = |x, y| f.position(d(x, y)).unwrap();
        assert_eq!(m_set(&f, 0, 1), vec![pos(1, 0)]);
        assert_eq!(m_set(&p2(), 1, 0), vec![p2().position(d(-1, -1)).unwrap()]);
        let mut both = m_set(&f, 1, 1);
        both.sort();
        let mut want = vec![pos(1, 0), pos(0, -1)];
        want.sort();
        assert_eq!(both, want);
    }

    #[test]
    fn hirzebruch_pr_star() {
        for (e, pairs) in [(0, 2), (1, 1), (2, 1)] {
            let f = fan(&[[0, 1], [1, 0], [0, -1], [-1, e]]);
            assert_eq!(pr_star(&f).len(), pairs);
        }
        assert_eq!(toric_fibrations(&p2()), Err(FanError::NoFibrations));
    }

    #[test]
    fn fibers_have_square_zero() {
        for c in [fig12(), divisor_of_polygon(&rectangle(5, 3)).unwrap()] {
            for fib in toric_fibrations(c.fan()).unwrap() {
                assert_eq!(intersection_number(c.fan(), &fib.coeffs, &fib.coeffs).unwrap(), 0);
                assert_eq!(fib.degree(&c).unwrap(), width_via_fan(&c, fib.axis).unwrap());
            }
        }
    }

    #[test]
    fn rectangle_fibration_degrees() {
        let c = divisor_of_polygon(&rectangle(5, 3)).unwrap();
        let mut degs: Vec<i64> = toric_fibrations(c.fan()).unwrap().iter().map(|f| f.degree(&c).unwrap()).collect();
        degs.sort();
        assert_eq!(degs, vec![3, 5]);
    }

    #[test]
    fn intersection_pairing_recovers_self_intersection() {
        let c = fig12();
        assert_eq!(intersection_number(c.fan(), c.coeffs(), c.coeffs()).unwrap(), 12);
        assert_eq!(self_intersection(&c).unwrap(), 12);
        let c = divisor_of_polygon(&standard_simplex(3)).unwrap();
        assert_eq!(intersection_number(c.fan(), c.coeffs(), c.coeffs()).unwrap(), 9);
    }

    #[test]
    fn extra_blow_up_is_removed() {
        let f = fan(&[[0, -1], [1, 0], [1, 1], [-1, 0]]);
        let p = standard_simplex(5);
        let coeffs: Vec<i64> = f.rays().iter().map(|&r| p.support_value(r)).collect();
        let c = ToricDivisor::new(f, coeffs).unwrap();
        assert_eq!(curve_ray_intersection(&c, c.fan().position(d(1, 0)).unwrap()).unwrap(), 0);
        assert!(!is_relatively_minimal(&c).unwrap());
        let (m, removed) = relative_minimalize(&c).unwrap();
        assert_eq!(removed, vec![d(1, 0)]);
        assert_eq!(m.fan().len(), 3);
        assert_eq!(polygon_of_divisor(&m).unwrap(), p);
    }

    #[test]
    fn blow_down_of_unit_edge_enlarges_polygon() {
        // rectangle with one corner cut by a unit edge
        let p = polygon(&[(0, 0), (4, 0), (4, 2), (3, 3), (0, 3)]);
        let c = divisor_of_polygon(&p).unwrap();
        let (m, removed) = relative_minimalize(&c).unwrap();
        assert_eq!(removed, vec![d(1, 1)]);
        let q = polygon_of_divisor(&m).unwrap();
        assert_eq!(q, rectangle(4, 3));
        assert_eq!(q.self_intersection(), p.self_intersection() + 1);
        assert_eq!(q.genus(), p.genus());
    }

    #[test]
    fn fig12_minimalize_is_identity() {
        let c = fig12();
        let (m, removed) = relative_minimalize(&c).unwrap();
        assert!(removed.is_empty());
        assert_eq!(m, c);
    }

    mod orders {
        use super::*;
        use proptest::prelude::*;
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        /// Corners of a random box cut off by unit or longer diagonals, so
        /// the resolved fans have (-1)-rays of both kinds.
        fn cut_box() -> impl Strategy<Value = LatticePolygon> {
            (2i64..7, 2i64..7, prop::array::uniform4(0i64..3)).prop_map(|(a, b, cut)| {
                let (c0, c1, c2, c3) = (cut[0].min(a / 2), cut[1].min(b / 2), cut[2].min(a / 2), cut[3].min(b / 2));
                let pts = [(c0, 0), (a - c1, 0), (a, c1), (a, b - c2), (a - c2, b), (c3, b), (0, b - c3), (0, c0)];
                polygon(&pts)
            })
        }

        fn smooth(c: &ToricDivisor) -> bool {
            validate_fan(&c.fan().rays().iter().map(|&r| r.into()).collect::<Vec<_>>()).is_ok()
        }

        proptest! {
            #[test]
            fn every_removal_order_gives_a_minimal_model(p in cut_box(), seed in any::<u64>()) {
                let c = divisor_of_polygon(&p).unwrap();
                let (first, _) = minimalize_by(&c, |cands| cands[0]).unwrap();
                let (last, _) = minimalize_by(&c, |cands| *cands.last().unwrap()).unwrap();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (random, _) = minimalize_by(&c, |cands| cands[rng.gen_range(0..cands.len())]).unwrap();
                for m in [&first, &last, &random] {
                    prop_assert!(smooth(m));
                    prop_assert!(is_relatively_minimal(m).unwrap());
                    prop_assert_eq!(adjunction_genus(m).unwrap(), p.genus());
                }
            }
        }

        #[test]
        fn minimal_models_are_not_unique() {
            // P1 x P1 blown up once is P2 blown up twice
            let p = polygon(&[(0, 0), (1, 0), (2, 1), (2, 2), (0, 2)]);
            let c = divisor_of_polygon(&p).unwrap();
            let (first, _) = minimalize_by(&c, |cands| cands[0]).unwrap();
            let (last, _) = minimalize_by(&c, |cands| *cands.last().unwrap()).unwrap();
            let mut sizes = [first.fan().len(), last.fan().len()];
            sizes.sort();
            assert_eq!(sizes, [3, 4]);
            assert!(smooth(&first) && smooth(&last));
        }
    }
}
