//! Exhaustive enumeration of convex lattice polygons in a box, and the
//! brute-force lattice width oracle.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::equivalence::canonical_form;
use crate::error::EnumError;
use crate::fan::{divisor_of_polygon, is_relatively_minimal};
use crate::lattice::{Direction, LatticePoint};
use crate::polygon::{turn, LatticePolygon};
use crate::width::lattice_width;

/// Default cap on the box size.
pub const DEFAULT_MAX_COORD: i64 = 8;
/// The cap can be raised through the environment, but never past this.
pub const HARD_MAX_COORD: i64 = 10;
pub const MAX_COORD_ENV: &str = "LATTICECURVE_MAX_COORD";

/// The configured cap: `LATTICECURVE_MAX_COORD` if set and valid, clamped
/// to [`HARD_MAX_COORD`], else [`DEFAULT_MAX_COORD`].
pub fn max_coord_cap() -> i64 {
    std::env::var(MAX_COORD_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .filter(|&n| n >= 0)
        .map(|n| n.min(HARD_MAX_COORD))
        .unwrap_or(DEFAULT_MAX_COORD)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dedup {
    Translation,
    Unimodular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    MinGenus(i64),
    LatticeWidth(i64),
    MaxSelfIntersection(i64),
    NonSimplex,
    /// Relatively minimal on the minimal smooth model.
    RelativelyMinimal,
}

impl Filter {
    pub fn accepts(&self, p: &LatticePolygon) -> bool {
        match *self {
            Filter::MinGenus(g) => p.genus() >= g,
            Filter::LatticeWidth(q) => lattice_width(p).q == q,
            Filter::MaxSelfIntersection(c) => p.self_intersection() <= c,
            Filter::NonSimplex => p.simplex_degree().is_none(),
            Filter::RelativelyMinimal => relatively_minimal(p),
        }
    }
}

/// Relative minimality of the divisor of `p` on its minimal smooth model;
/// degenerate polygons count as minimal.
pub fn relatively_minimal(p: &LatticePolygon) -> bool {
    match divisor_of_polygon(p) {
        Ok(c) => is_relatively_minimal(&c).expect("divisor of a polygon is nef"),
        Err(_) => true,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonStream {
    pub max_coord: i64,
    pub dedup: Dedup,
    pub full_dimensional: bool,
    pub filters: Vec<Filter>,
}

impl PolygonStream {
    /// Full-dimensional polygons in `[0, n]²` up to translation.
    pub fn new(max_coord: i64) -> Self {
        PolygonStream { max_coord, dedup: Dedup::Translation, full_dimensional: true, filters: Vec::new() }
    }

    pub fn dedup(mut self, d: Dedup) -> Self {
        self.dedup = d;
        self
    }

    pub fn with_degenerate(mut self) -> Self {
        self.full_dimensional = false;
        self
    }

    pub fn filter(mut self, f: Filter) -> Self {
        self.filters.push(f);
        self
    }
}

fn check_cap(n: i64) -> Result<(), EnumError> {
    let cap = max_coord_cap();
    if n > cap || n < 0 {
        return Err(EnumError::CapExceeded { requested: n, cap });
    }
    Ok(())
}

/// All convex lattice polygons fitting in `[0, N]²`, each translated so its
/// bounding box starts at the origin, in a deterministic order.
pub fn enumerate_polygons(stream: &PolygonStream) -> Result<Vec<LatticePolygon>, EnumError> {
    let mut all = fold_polygons(
        stream.max_coord,
        Vec::new,
        |acc: &mut Vec<LatticePolygon>, vs| {
            let p = LatticePolygon::from_ccw_vertices(vs.to_vec());
            if stream.filters.iter().all(|f| f.accepts(&p)) {
                acc.push(p);
            }
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )?;
    if !stream.full_dimensional {
        let mut degenerate: Vec<LatticePolygon> = degenerate_shapes(stream.max_coord)
            .into_iter()
            .filter(|p| stream.filters.iter().all(|f| f.accepts(p)))
            .collect();
        degenerate.append(&mut all);
        all = degenerate;
    }
    if stream.dedup == Dedup::Unimodular {
        let forms: Vec<Vec<LatticePoint>> = all.par_iter().map(canonical_form).collect();
        let mut seen = HashSet::new();
        all = all.into_iter().zip(forms).filter(|(_, f)| seen.insert(f.clone())).map(|(p, _)| p).collect();
    }
    Ok(all)
}

/// Folds `visit` over every full-dimensional polygon in `[0, N]²` (up to
/// translation) without materializing the list. Vertices are passed
/// counter-clockwise starting from the lowest, then leftmost, vertex.
/// Partial results are merged in enumeration order, so the outcome is
/// deterministic whenever `merge` is associative.
pub fn fold_polygons<T, I, V, M>(n: i64, init: I, visit: V, merge: M) -> Result<T, EnumError>
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    V: Fn(&mut T, &[LatticePoint]) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    check_cap(n)?;
    let edges = EdgeTable::new(n);
    let starts: Vec<(i64, usize)> = (0..=n)
        .flat_map(|sz| {
            let edges = &edges;
            (0..edges.vecs.len())
                .filter(move |&k| {
                    let (dz, dw) = edges.vecs[k];
                    let p = LatticePoint::new(sz + dz, dw);
                    (dw > 0 || dw == 0 && dz > 0) && in_box(p, n)
                })
                .map(move |k| (sz, k))
        })
        .collect();
    let out = starts
        .into_par_iter()
        .map(|(sz, k)| {
            let s = LatticePoint::new(sz, 0);
            let (dz, dw) = edges.vecs[k];
            let mut acc = init();
            let mut chain = vec![s, LatticePoint::new(sz + dz, dw)];
            let mut emit = |vs: &[LatticePoint]| visit(&mut acc, vs);
            let mut walk = Walk { edges: &edges, n, emit: &mut emit };
            walk.extend(&mut chain, k, sz == 0 || sz + dz == 0);
            acc
        })
        .reduce(&init, &merge);
    Ok(out)
}

fn in_box(p: LatticePoint, n: i64) -> bool {
    (0..=n).contains(&p.z) && (0..=n).contains(&p.w)
}

/// Nonzero edge vectors of the box sorted by angle in `[0, 2π)`.
struct EdgeTable {
    vecs: Vec<(i64, i64)>,
    /// First index with a strictly larger angle.
    next: Vec<usize>,
}

fn half(v: (i64, i64)) -> u8 {
    u8::from(!(v.1 > 0 || v.1 == 0 && v.0 > 0))
}

fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&(a.0 * b.1 - a.1 * b.0)))
}

impl EdgeTable {
    fn new(n: i64) -> Self {
        let mut vecs: Vec<(i64, i64)> =
            (-n..=n).flat_map(|x| (-n..=n).map(move |y| (x, y))).filter(|&v| v != (0, 0)).collect();
        vecs.sort_by(|&a, &b| angle_cmp(a, b).then_with(|| (a.0.abs() + a.1.abs()).cmp(&(b.0.abs() + b.1.abs()))));
        let mut next = vec![vecs.len(); vecs.len()];
        for k in (0..vecs.len().saturating_sub(1)).rev() {
            next[k] = if angle_cmp(vecs[k], vecs[k + 1]) == Ordering::Less { k + 1 } else { next[k + 1] };
        }
        EdgeTable { vecs, next }
    }
}

struct Walk<'a, F: FnMut(&[LatticePoint])> {
    edges: &'a EdgeTable,
    n: i64,
    emit: &'a mut F,
}

impl<F: FnMut(&[LatticePoint])> Walk<'_, F> {
    /// Edge angles strictly increase around the polygon, starting from the
    /// lowest vertex, so each step only tries directions between the last
    /// edge and the closing edge.
    fn extend(&mut self, chain: &mut Vec<LatticePoint>, k: usize, touches_left: bool) {
        let s = chain[0];
        let v1 = chain[1];
        let last = chain[chain.len() - 1];
        let prev = chain[chain.len() - 2];
        let e = self.edges.vecs[k];
        // a downward edge to the right never comes back to z = 0
        if !touches_left && e.1 < 0 && e.0 >= 0 {
            return;
        }
        if chain.len() >= 3 && touches_left && last.w > 0 && turn(prev, last, s) > 0 && turn(last, s, v1) > 0 {
            (self.emit)(chain);
        }
        let close = (s.z - last.z, s.w - last.w);
        for j in self.edges.next[k]..self.edges.vecs.len() {
            let d = self.edges.vecs[j];
            if angle_cmp(d, close) != Ordering::Less {
                break;
            }
            let p = LatticePoint::new(last.z + d.0, last.w + d.1);
            if in_box(p, self.n) && turn(s, v1, p) > 0 && turn(last, p, s) > 0 {
                chain.push(p);
                self.extend(chain, j, touches_left || p.z == 0);
                chain.pop();
            }
        }
    }
}

fn degenerate_shapes(n: i64) -> Vec<LatticePolygon> {
    let mut out = vec![LatticePolygon::from_ccw_vertices(vec![LatticePoint::ORIGIN])];
    for a in 0..=n {
        for b in 0..=n {
            if a == 0 && b == 0 {
                continue;
            }
            out.push(LatticePolygon::from_ccw_vertices(vec![LatticePoint::ORIGIN, LatticePoint::new(a, b)]));
            if a > 0 && b > 0 {
                out.push(LatticePolygon::from_ccw_vertices(vec![LatticePoint::new(0, b), LatticePoint::new(a, 0)]));
            }
        }
    }
    out
}

/// Minimum width over primitive directions with `|x|, |y| <= bound`; the
/// default bound is `2·max(width(1,0), width(0,1))`.
pub fn brute_force_lattice_width(p: &LatticePolygon, bound: Option<i64>) -> i64 {
    brute_force_width_of(p.vertices(), bound)
}

/// [`brute_force_lattice_width`] on a raw vertex list.
pub fn brute_force_width_of(vs: &[LatticePoint], bound: Option<i64>) -> i64 {
    if vs.len() < 2 {
        return 0;
    }
    let extent = |f: fn(&LatticePoint) -> i64| {
        let (lo, hi) = vs.iter().map(f).fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
        hi - lo
    };
    let b = bound.unwrap_or_else(|| 2 * extent(|v| v.z).max(extent(|v| v.w))).max(0);
    let owned;
    let dirs: &[(i64, i64)] = match cached_directions(b) {
        Some(d) => d,
        None => {
            owned = primitive_directions(b);
            &owned
        }
    };
    let mut best = i64::MAX;
    'dirs: for &(x, y) in dirs {
        let first = x * vs[0].z + y * vs[0].w;
        let (mut lo, mut hi) = (first, first);
        for v in &vs[1..] {
            let t = x * v.z + y * v.w;
            lo = lo.min(t);
            hi = hi.max(t);
            if hi - lo >= best {
                continue 'dirs;
            }
        }
        best = hi - lo;
    }
    if best == i64::MAX {
        0
    } else {
        best
    }
}

const CACHED_BOUND: i64 = 4 * HARD_MAX_COORD;

fn cached_directions(b: i64) -> Option<&'static [(i64, i64)]> {
    static CACHE: OnceLock<Vec<Vec<(i64, i64)>>> = OnceLock::new();
    if b > CACHED_BOUND {
        return None;
    }
    let all = CACHE.get_or_init(|| (0..=CACHED_BOUND).map(primitive_directions).collect());
    Some(&all[b as usize])
}

/// Primitive `(x, y)` with `x >= 0`, one per line through the origin, small
/// ones first so the search can stop early.
fn primitive_directions(b: i64) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = (0..=b)
        .flat_map(|x| (-b..=b).map(move |y| (x, y)))
        .filter(|&(x, y)| Direction::new(x, y).is_ok())
        .filter(|&(x, y)| x > 0 || y > 0)
        .collect();
    out.sort_by_key(|&(x, y)| (x.abs().max(y.abs()), x.abs() + y.abs()));
    out
}
