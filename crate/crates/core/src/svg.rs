//! SVG rendering of drawings. Coordinates are converted to floating point
//! here only; nothing rendered feeds back into computation.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::crossings::{count_crossings, Drawing};
use crate::graph::AnyGraph;
use crate::regularity::EquitablePartition;

const VIEW: f64 = 1000.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
];

#[derive(Clone, Debug)]
pub struct SvgOptions<'a> {
    /// Colors vertices by part when given.
    pub partition: Option<&'a EquitablePartition>,
    /// Crossing markers beyond this count are omitted (a comment says how many).
    pub max_markers: usize,
}

impl Default for SvgOptions<'_> {
    fn default() -> Self {
        SvgOptions {
            partition: None,
            max_markers: 5000,
        }
    }
}

pub fn render_svg(d: &Drawing, opts: &SvgOptions<'_>) -> String {
    let pts: Vec<(f64, f64)> = d
        .placement()
        .points()
        .iter()
        .map(|p| (p.x.to_f64().unwrap_or(0.0), p.y.to_f64().unwrap_or(0.0)))
        .collect();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pts {
        lo_x = lo_x.min(x);
        lo_y = lo_y.min(y);
        hi_x = hi_x.max(x);
        hi_y = hi_y.max(y);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y);
    let scale = if span > 0.0 { (VIEW - 2.0 * MARGIN) / span } else { 1.0 };
    // flip y so the drawing keeps its orientation on screen
    let map = |(x, y): (f64, f64)| (MARGIN + (x - lo_x) * scale, VIEW - MARGIN - (y - lo_y) * scale);
    let screen: Vec<(f64, f64)> = pts.iter().map(|&p| map(p)).collect();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW} {VIEW}" width="{VIEW}" height="{VIEW}">"#
    );
    out.push_str(
        "<style>.edge{stroke:#444;stroke-width:1}.vertex{stroke:#000;stroke-width:0.5}.crossing{fill:#d62728;fill-opacity:0.6}</style>\n",
    );
    let _ = writeln!(out, r##"<rect width="{VIEW}" height="{VIEW}" fill="#fff"/>"##);

    out.push_str("<g>\n");
    for (u, v) in d.graph().drawn_edges() {
        let (a, b) = (screen[u], screen[v]);
        let opacity = match d.graph() {
            AnyGraph::Plain(_) => String::new(),
            AnyGraph::Weighted(g) => {
                format!(r#" stroke-opacity="{:.3}""#, g.weight(u, v).to_f64().unwrap_or(1.0))
            }
        };
        let _ = writeln!(
            out,
            r#"<line class="edge" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"{opacity}/>"#,
            a.0, a.1, b.0, b.1
        );
    }
    out.push_str("</g>\n<g>\n");
    let pairs = count_crossings(d).pairs;
    for &((a, b), (c, e)) in pairs.iter().take(opts.max_markers) {
        if let Some((x, y)) = intersection(screen[a], screen[b], screen[c], screen[e]) {
            let _ = writeln!(out, r#"<circle class="crossing" cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
        }
    }
    if pairs.len() > opts.max_markers {
        let _ = writeln!(
            out,
            "<!-- {} crossing markers omitted -->",
            pairs.len() - opts.max_markers
        );
    }
    out.push_str("</g>\n<g>\n");
    for (v, &(x, y)) in screen.iter().enumerate() {
        let color = opts
            .partition
            .map_or(PALETTE[0], |p| PALETTE[p.part_of(v) % PALETTE.len()]);
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{x:.3}" cy="{y:.3}" r="5" fill="{color}"><title>{v}</title></circle>"#
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn intersection(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> Option<(f64, f64)> {
    let r = (b.0 - a.0, b.1 - a.1);
    let s = (d.0 - c.0, d.1 - c.1);
    let den = r.0 * s.1 - r.1 * s.0;
    if den == 0.0 {
        return None;
    }
    let t = ((c.0 - a.0) * s.1 - (c.1 - a.1) * s.0) / den;
    Some((a.0 + t * r.0, a.1 + t * r.1))
}
