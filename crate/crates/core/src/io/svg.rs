use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::IoError;
use crate::geom::{bounding_box, Point, FINGERHUT_FACTOR};
use crate::matching::{Matching, PointSet};
use crate::witness::WitnessResult;

const MARGIN: f64 = 0.1;

/// Semi-axes of `E_lambda(ab)`.
fn semi_axes(length: f64, lambda: f64) -> (f64, f64) {
    (
        0.5 * lambda * length,
        0.5 * length * (lambda * lambda - 1.0).sqrt(),
    )
}

/// Points, matching segments with their `2/sqrt 3` ellipses and the witness.
/// The picture is y-up: every `y` is negated in SVG user space.
pub fn render_svg(s: &PointSet, m: Option<&Matching>, witness: Option<&WitnessResult>) -> String {
    let segments = m.map(|m| m.segments(s)).unwrap_or_default();
    let mut extent_pts: Vec<Point> = s.points().to_vec();
    for &(a, b) in &segments {
        let c = a.midpoint(b);
        let (rx, ry) = semi_axes((b - a).norm(), FINGERHUT_FACTOR);
        let u = b - a;
        let u = u * (1.0 / u.norm().max(f64::MIN_POSITIVE));
        let hx = (rx * u.x).hypot(ry * u.y);
        let hy = (rx * u.y).hypot(ry * u.x);
        extent_pts.extend([c - Point::new(hx, hy), c + Point::new(hx, hy)]);
    }
    if let Some(w) = witness {
        extent_pts.push(w.o_star);
    }
    let (lo, hi) = bounding_box(&extent_pts).expect("point sets are nonempty");
    let size = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
    let pad = MARGIN * size;
    let (x0, y0) = (lo.x - pad, -hi.y - pad);
    let (width, height) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let stroke = 0.004 * size;
    let radius = 0.012 * size;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:?} {y0:?} {width:?} {height:?}">"#
    );
    for &(a, b) in &segments {
        let length = (b - a).norm();
        if length == 0.0 {
            continue;
        }
        let c = a.midpoint(b);
        let (rx, ry) = semi_axes(length, FINGERHUT_FACTOR);
        let angle = -(b - a).y.atan2((b - a).x).to_degrees();
        let _ = writeln!(
            out,
            r#"  <ellipse class="ellipse" cx="{:?}" cy="{:?}" rx="{rx:?}" ry="{ry:?}" transform="rotate({angle:?} {:?} {:?})" fill="none" stroke="steelblue" stroke-width="{stroke:?}"/>"#,
            c.x, -c.y, c.x, -c.y
        );
    }
    for &(a, b) in &segments {
        let _ = writeln!(
            out,
            r#"  <line class="edge" x1="{:?}" y1="{:?}" x2="{:?}" y2="{:?}" stroke="black" stroke-width="{stroke:?}"/>"#,
            a.x, -a.y, b.x, -b.y
        );
    }
    for p in s.points() {
        let _ = writeln!(
            out,
            r#"  <circle class="point" cx="{:?}" cy="{:?}" r="{radius:?}" fill="black"/>"#,
            p.x, -p.y
        );
    }
    if let Some(w) = witness {
        let _ = writeln!(
            out,
            r#"  <circle class="witness" cx="{:?}" cy="{:?}" r="{:?}" fill="crimson"/>"#,
            w.o_star.x,
            -w.o_star.y,
            1.5 * radius
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(
    path: &Path,
    s: &PointSet,
    m: Option<&Matching>,
    witness: Option<&WitnessResult>,
) -> Result<(), IoError> {
    Ok(fs::write(path, render_svg(s, m, witness))?)
}
