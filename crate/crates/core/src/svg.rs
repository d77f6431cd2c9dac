//! Standalone SVG figures: a polygon on the lattice grid with its interior
//! points and lattice-width directions, and a fan's ray diagram.

use std::fmt::Write;

use crate::error::PlotError;
use crate::fan::Fan;
use crate::lattice::LatticePoint;
use crate::polygon::LatticePolygon;
use crate::width::lattice_width;

/// Pixels per lattice unit.
pub const UNIT: i64 = 12;
/// Largest bounding-box side that will be drawn.
pub const PLOT_LIMIT: i64 = 200;

struct Canvas {
    zmin: i64,
    wmax: i64,
    width: i64,
    height: i64,
    body: String,
}

impl Canvas {
    /// Covers `[zmin, zmax] × [wmin, wmax]` plus a one-unit margin.
    fn new(zmin: i64, zmax: i64, wmin: i64, wmax: i64) -> Self {
        let (zmin, zmax, wmin, wmax) = (zmin - 1, zmax + 1, wmin - 1, wmax + 1);
        let mut c =
            Canvas { zmin, wmax, width: (zmax - zmin) * UNIT, height: (wmax - wmin) * UNIT, body: String::new() };
        c.body.push_str("<g stroke=\"#ddd\" stroke-width=\"1\">\n");
        for z in zmin..=zmax {
            let x = (z - zmin) * UNIT;
            let _ = writeln!(c.body, "<line x1=\"{x}\" y1=\"0\" x2=\"{x}\" y2=\"{}\"/>", c.height);
        }
        for w in wmin..=wmax {
            let y = (wmax - w) * UNIT;
            let _ = writeln!(c.body, "<line x1=\"0\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\"/>", c.width);
        }
        c.body.push_str("</g>\n");
        c
    }

    fn x(&self, z: i64) -> i64 {
        (z - self.zmin) * UNIT
    }

    fn y(&self, w: i64) -> i64 {
        (self.wmax - w) * UNIT
    }

    fn finish(self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
            w = self.width,
            h = self.height
        );
        out.push_str(
            "<defs><marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" \
             markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#c00\"/></marker></defs>\n",
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn extent(points: impl Iterator<Item = LatticePoint> + Clone) -> (i64, i64, i64, i64) {
    let zmin = points.clone().map(|p| p.z).min().unwrap_or(0);
    let zmax = points.clone().map(|p| p.z).max().unwrap_or(0);
    let wmin = points.clone().map(|p| p.w).min().unwrap_or(0);
    let wmax = points.map(|p| p.w).max().unwrap_or(0);
    (zmin, zmax, wmin, wmax)
}

/// The polygon stroked, interior lattice points filled, boundary lattice
/// points hollow, and one arrow per lattice-width direction.
pub fn polygon_svg(p: &LatticePolygon) -> Result<String, PlotError> {
    let (zmin, zmax, wmin, wmax) = extent(p.vertices().iter().copied());
    let side = (zmax - zmin).max(wmax - wmin);
    if side > PLOT_LIMIT {
        return Err(PlotError::TooLarge { extent: side, limit: PLOT_LIMIT });
    }
    let mut c = Canvas::new(zmin, zmax, wmin, wmax);
    let pts: Vec<String> = p.vertices().iter().map(|v| format!("{},{}", c.x(v.z), c.y(v.w))).collect();
    let _ =
        writeln!(c.body, "<polygon points=\"{}\" fill=\"#eef\" stroke=\"#000\" stroke-width=\"2\"/>", pts.join(" "));
    let interior = p.interior_points();
    for q in p.lattice_points() {
        let fill = if interior.contains(&q) { "#000" } else { "#fff" };
        let _ = writeln!(
            c.body,
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"{fill}\" stroke=\"#000\" stroke-width=\"1\"/>",
            c.x(q.z),
            c.y(q.w)
        );
    }
    // arrows start at the vertex average, two units long
    let n = p.vertices().len() as f64;
    let cz = p.vertices().iter().map(|v| v.z as f64).sum::<f64>() / n;
    let cw = p.vertices().iter().map(|v| v.w as f64).sum::<f64>() / n;
    let (x0, y0) = ((cz - c.zmin as f64) * UNIT as f64, (c.wmax as f64 - cw) * UNIT as f64);
    for d in lattice_width(p).witnesses.directions() {
        let (dx, dy) = (d.x() as f64, d.y() as f64);
        let len = (dx * dx + dy * dy).sqrt();
        let (x1, y1) = (x0 + 2.0 * UNIT as f64 * dx / len, y0 - 2.0 * UNIT as f64 * dy / len);
        let _ = writeln!(
            c.body,
            "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y1:.2}\" stroke=\"#c00\" \
             stroke-width=\"2\" marker-end=\"url(#head)\"/>"
        );
    }
    Ok(c.finish())
}

/// Rays from the origin through their primitive generators, which are
/// marked.
pub fn fan_svg(f: &Fan) -> Result<String, PlotError> {
    let gens: Vec<LatticePoint> = f.rays().iter().map(|r| LatticePoint::new(r.x(), r.y())).collect();
    let (zmin, zmax, wmin, wmax) = extent(gens.iter().copied().chain([LatticePoint::ORIGIN]));
    let side = (zmax - zmin).max(wmax - wmin);
    if side > PLOT_LIMIT {
        return Err(PlotError::TooLarge { extent: side, limit: PLOT_LIMIT });
    }
    let mut c = Canvas::new(zmin, zmax, wmin, wmax);
    let (ox, oy) = (c.x(0), c.y(0));
    for g in &gens {
        let _ = writeln!(
            c.body,
            "<line x1=\"{ox}\" y1=\"{oy}\" x2=\"{}\" y2=\"{}\" stroke=\"#000\" stroke-width=\"2\"/>",
            c.x(g.z),
            c.y(g.w)
        );
        let _ = writeln!(c.body, "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#000\"/>", c.x(g.z), c.y(g.w));
    }
    let _ = writeln!(c.body, "<circle cx=\"{ox}\" cy=\"{oy}\" r=\"3\" fill=\"#fff\" stroke=\"#000\"/>");
    Ok(c.finish())
}
