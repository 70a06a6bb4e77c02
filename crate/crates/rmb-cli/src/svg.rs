//! Static SVG figure: the polygon outline and the sampled unit level set
//! of its radial-mean-body norm. Output is byte-stable for fixed input.

use std::fmt::Write;

use rmb_core::geometry::{ConvexPolygon, Vec2};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const MARGIN: f64 = 40.0;

/// Two closed paths (polygon, level set) with a legend.
pub fn render_svg(poly: &ConvexPolygon, boundary: &[Vec2], p: f64) -> String {
    let (mut lo_x, mut lo_y) = (f64::INFINITY, f64::INFINITY);
    let (mut hi_x, mut hi_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &q in poly.vertices().iter().chain(boundary) {
        lo_x = lo_x.min(q.x);
        lo_y = lo_y.min(q.y);
        hi_x = hi_x.max(q.x);
        hi_y = hi_y.max(q.y);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-12);
    let scale = (WIDTH - 2.0 * MARGIN) / span;
    // Flip y so the figure is in the usual mathematical orientation.
    let map = |q: Vec2| -> (f64, f64) {
        (
            MARGIN + (q.x - lo_x) * scale,
            HEIGHT - MARGIN - (q.y - lo_y) * scale,
        )
    };
    let path = |pts: &mut dyn Iterator<Item = Vec2>| -> String {
        let mut d = String::new();
        for (i, q) in pts.enumerate() {
            let (x, y) = map(q);
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{x:.6} {y:.6} ");
        }
        d.push('Z');
        d
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH:.0}\" height=\"{HEIGHT:.0}\" viewBox=\"0 0 {WIDTH:.0} {HEIGHT:.0}\">"
    );
    let _ = writeln!(
        out,
        "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>"
    );
    let _ = writeln!(
        out,
        "  <path d=\"{}\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\"/>",
        path(&mut poly.vertices().iter().copied())
    );
    let _ = writeln!(
        out,
        "  <path d=\"{}\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>",
        path(&mut boundary.iter().copied())
    );
    let _ = writeln!(
        out,
        "  <text x=\"{MARGIN:.0}\" y=\"24\" font-family=\"monospace\" font-size=\"14\" fill=\"#1f77b4\">K (input polygon)</text>"
    );
    let _ = writeln!(
        out,
        "  <text x=\"{MARGIN:.0}\" y=\"42\" font-family=\"monospace\" font-size=\"14\" fill=\"#d62728\">unit level set of the R_pK gauge, p = {p}</text>"
    );
    out.push_str("</svg>\n");
    out
}
