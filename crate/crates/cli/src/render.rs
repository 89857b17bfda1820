//! ASCII and SVG drawings of lattice windows.

use std::fmt::Write;

use idcode::lattice::{Point, PointSet, SqRadius};

/// A rectangular window of the lattice, `lo` and `hi` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: Point,
    pub hi: Point,
}

impl Window {
    /// `w`×`h` cells around `center`; even sizes extend one further on the
    /// negative side.
    pub fn centered(center: Point, w: i64, h: i64) -> Self {
        let lo = Point::new(center.x - w / 2, center.y - h / 2);
        Window {
            lo,
            hi: Point::new(lo.x + w - 1, lo.y + h - 1),
        }
    }

    pub fn width(&self) -> i64 {
        self.hi.x - self.lo.x + 1
    }

    pub fn height(&self) -> i64 {
        self.hi.y - self.lo.y + 1
    }

    pub fn cells(&self) -> i64 {
        self.width() * self.height()
    }
}

/// One character per cell, top row first: '#' for `filled`, 'o' for
/// `highlight` (which wins), '.' otherwise.
pub fn ascii(win: Window, filled: &dyn Fn(Point) -> bool, highlight: &PointSet) -> String {
    let mut out = String::new();
    for y in (win.lo.y..=win.hi.y).rev() {
        for x in win.lo.x..=win.hi.x {
            let p = Point::new(x, y);
            out.push(if highlight.contains(&p) {
                'o'
            } else if filled(p) {
                '#'
            } else {
                '.'
            });
        }
        out.push('\n');
    }
    out
}

const CELL: f64 = 20.0;

/// Circles of radius √r² drawn around a marked vertex.
pub struct Circles {
    pub center: Point,
    pub radii: Vec<SqRadius>,
}

fn radius_px(r: SqRadius) -> f64 {
    (r.num() as f64 / r.den() as f64).sqrt() * CELL
}

/// Static SVG: grey lattice dots, black code vertices, red highlights and
/// optional circles.
pub fn svg(
    win: Window,
    filled: &dyn Fn(Point) -> bool,
    highlight: &PointSet,
    circles: Option<&Circles>,
) -> String {
    let (w, h) = (win.width() as f64 * CELL, win.height() as f64 * CELL);
    let px = |p: Point| {
        (
            (p.x - win.lo.x) as f64 * CELL + CELL / 2.0,
            (win.hi.y - p.y) as f64 * CELL + CELL / 2.0,
        )
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    for y in (win.lo.y..=win.hi.y).rev() {
        for x in win.lo.x..=win.hi.x {
            let p = Point::new(x, y);
            let (cx, cy) = px(p);
            let (r, fill) = if highlight.contains(&p) {
                (6, "#c0392b")
            } else if filled(p) {
                (6, "black")
            } else {
                (2, "#999999")
            };
            let _ = writeln!(out, r#"<circle cx="{cx}" cy="{cy}" r="{r}" fill="{fill}"/>"#);
        }
    }
    if let Some(c) = circles {
        let (cx, cy) = px(c.center);
        for &r in &c.radii {
            let _ = writeln!(
                out,
                r##"<circle cx="{cx}" cy="{cy}" r="{:.3}" fill="none" stroke="#2c7fb8" stroke-width="1.5"/>"##,
                radius_px(r)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
