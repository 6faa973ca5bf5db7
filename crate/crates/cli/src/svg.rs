//! Minimal SVG 1.1 output. Coordinates are written with a fixed number of
//! decimals so the bytes only depend on the inputs.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rupert_core::geom::{ConvexPolygon2, Point2, Point3};
use rupert_core::passage::AllowableGrid;

const PANEL: f64 = 400.0;
const PAD: f64 = 20.0;

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Maps model coordinates into a square panel, y up.
#[derive(Clone, Copy)]
struct Frame {
    cx: f64,
    cy: f64,
    scale: f64,
    ox: f64,
}

impl Frame {
    fn fit(points: impl IntoIterator<Item = Point2>, ox: f64) -> Frame {
        let (mut lo, mut hi) =
            (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in points {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y);
        let scale = if span.is_finite() && span > 0.0 { (PANEL - 2.0 * PAD) / span } else { 1.0 };
        Frame { cx: 0.5 * (lo.x + hi.x), cy: 0.5 * (lo.y + hi.y), scale, ox }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (self.ox + PANEL / 2.0 + (p.x - self.cx) * self.scale, PANEL / 2.0 - (p.y - self.cy) * self.scale)
    }

    fn pts(&self, poly: &[Point2]) -> String {
        poly.iter()
            .map(|&p| {
                let (x, y) = self.map(p);
                format!("{},{}", num(x), num(y))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

struct Doc {
    body: String,
}

impl Doc {
    fn new(panels: usize, title: &str) -> Doc {
        let width = PANEL * panels as f64;
        let mut body = String::new();
        let _ = writeln!(body, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            body,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = num(width),
            h = num(PANEL + 30.0)
        );
        let _ = writeln!(body, "<title>{}</title>", escape(title));
        let _ = writeln!(
            body,
            r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
            num(width),
            num(PANEL + 30.0)
        );
        Doc { body }
    }

    fn polygon(&mut self, f: &Frame, poly: &[Point2], style: &str) {
        let _ = writeln!(self.body, r#"<polygon points="{}" {style}/>"#, f.pts(poly));
    }

    fn line(&mut self, f: &Frame, a: Point2, b: Point2, style: &str) {
        let (x1, y1) = f.map(a);
        let (x2, y2) = f.map(b);
        let _ = writeln!(
            self.body,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
            num(x1),
            num(y1),
            num(x2),
            num(y2)
        );
    }

    fn dot(&mut self, f: &Frame, p: Point2, r: f64, style: &str) {
        let (x, y) = f.map(p);
        let _ = writeln!(self.body, r#"<circle cx="{}" cy="{}" r="{}" {style}/>"#, num(x), num(y), num(r));
    }

    fn caption(&mut self, x: f64, text: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13">{}</text>"#,
            num(x + PAD),
            num(PANEL + 18.0),
            escape(text)
        );
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

/// The unrotated shadow as an outline over the rotated shadow, filled.
pub fn shadow_svg(base: &ConvexPolygon2, rotated: &ConvexPolygon2, title: &str) -> String {
    let f = Frame::fit(base.vertices().iter().chain(rotated.vertices()).copied(), 0.0);
    let mut doc = Doc::new(1, title);
    doc.polygon(&f, rotated.vertices(), r##"fill="#9ecae1" fill-opacity="0.8" stroke="#3182bd" stroke-width="1.5""##);
    doc.polygon(&f, base.vertices(), r##"fill="none" stroke="#000000" stroke-width="2""##);
    doc.caption(0.0, title);
    doc.finish()
}

/// What a section figure shows.
pub struct SectionFigure<'a> {
    pub title: &'a str,
    /// Vertices of the oriented polyhedron.
    pub vertices: &'a [Point3],
    pub shadow: &'a ConvexPolygon2,
    pub polygon: &'a ConvexPolygon2,
    pub chord: Option<(Point2, Point2)>,
    /// Half-height of the prism slab, if any.
    pub slab: Option<f64>,
}

/// Top view (shadow, section, chord, projected vertices) beside a side
/// view (vertices against the section plane).
pub fn section_svg(fig: &SectionFigure) -> String {
    let top: Vec<Point2> = fig.vertices.iter().map(|p| Point2::new(p.x, p.y)).collect();
    let side: Vec<Point2> = fig.vertices.iter().map(|p| Point2::new(p.x, p.z)).collect();
    let ft = Frame::fit(top.iter().chain(fig.shadow.vertices()).copied(), 0.0);
    let fs = Frame::fit(side.iter().copied(), PANEL);
    let mut doc = Doc::new(2, fig.title);

    doc.polygon(
        &ft,
        fig.shadow.vertices(),
        r##"fill="#eeeeee" stroke="#555555" stroke-width="1" stroke-dasharray="4 3""##,
    );
    doc.polygon(
        &ft,
        fig.polygon.vertices(),
        r##"fill="#fdd0a2" fill-opacity="0.8" stroke="#e6550d" stroke-width="2""##,
    );
    if let Some((a, b)) = fig.chord {
        doc.line(&ft, a, b, r##"stroke="#08519c" stroke-width="1.5""##);
    }
    for &p in &top {
        doc.dot(&ft, p, 2.5, r##"fill="#000000""##);
    }
    doc.caption(0.0, &format!("{} (top)", fig.title));

    let (xl, xr) = side.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, r), p| (l.min(p.x), r.max(p.x)));
    doc.line(&fs, Point2::new(xl, 0.0), Point2::new(xr, 0.0), r##"stroke="#e6550d" stroke-width="2""##);
    if let Some(h) = fig.slab {
        for z in [h, -h] {
            doc.line(
                &fs,
                Point2::new(xl, z),
                Point2::new(xr, z),
                r##"stroke="#e6550d" stroke-width="1" stroke-dasharray="4 3""##,
            );
        }
    }
    for &p in &side {
        doc.dot(&fs, p, 2.5, r##"fill="#000000""##);
    }
    doc.caption(PANEL, "side");
    doc.finish()
}

/// Orthographic views of the axis sphere: the hemisphere facing the base
/// vertex on the left, the far hemisphere on the right. Allowable cells
/// are shaded.
pub fn allowable_svg(grid: &AllowableGrid, title: &str) -> String {
    let unit = [Point2::new(-1.0, -1.0), Point2::new(1.0, 1.0)];
    let near = Frame::fit(unit, 0.0);
    let far = Frame::fit(unit, PANEL);
    let mut doc = Doc::new(2, title);
    for f in [&near, &far] {
        doc.dot(f, Point2::new(0.0, 0.0), near.scale, r##"fill="#f7f7f7" stroke="#000000" stroke-width="1""##);
        // the equator of the sphere, seen edge-on
        doc.line(f, Point2::new(-1.0, 0.0), Point2::new(1.0, 0.0), r##"stroke="#bbbbbb" stroke-width="0.5""##);
    }
    let r = (PI / grid.resolution as f64 * near.scale * 0.6).max(0.4);
    for (i, row) in grid.cells.iter().enumerate() {
        let d = grid.latitude(i);
        for (j, &ok) in row.iter().enumerate() {
            if !ok {
                continue;
            }
            let b = grid.longitude(j);
            // u toward the viewer; w to the right, z up on the near side
            let (cu, cw, cn) = (d.cos(), d.sin() * b.cos(), d.sin() * b.sin());
            let (f, x) = if cu >= 0.0 { (&near, cw) } else { (&far, -cw) };
            doc.dot(f, Point2::new(x, cn), r, r##"fill="#31a354""##);
        }
    }
    doc.dot(&near, Point2::new(0.0, 0.0), 3.0, r##"fill="#d62728""##);
    doc.caption(0.0, &format!("{title} (near side)"));
    doc.caption(PANEL, "far side");
    doc.finish()
}
