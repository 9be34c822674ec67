//! Deterministic SVG drawings of vertex configurations.

use std::fmt::Write as _;

use crate::vertex::{Key, VertexConfig};

/// Drawing parameters. All lengths are integer pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderOptions {
    /// Pixels per doubled unit, so a lattice step is twice this.
    pub unit: i64,
    pub margin: i64,
    pub edge_color: String,
    pub grid_color: String,
    pub boundary_color: String,
    /// Stroke width of a multiplicity-1 edge; each extra unit adds `edge_step`.
    pub edge_width: i64,
    pub edge_step: i64,
    pub font_size: i64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            unit: 20,
            margin: 30,
            edge_color: "#1f5fd0".into(),
            grid_color: "#c8c8c8".into(),
            boundary_color: "#505050".into(),
            edge_width: 4,
            edge_step: 2,
            font_size: 12,
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// `sigma_i^{x/2} sigma_j^{y/2}` with subscripts and superscripts as tspans.
fn sigma_label(i: usize, j: usize, x: i64, y: i64, small: i64) -> String {
    let mut out = String::new();
    for (idx, e) in [(i, x), (j, y)] {
        if e == 0 {
            continue;
        }
        write!(out, r#"σ<tspan baseline-shift="sub" font-size="{small}">{}</tspan>"#, idx + 1).unwrap();
        if e != 2 {
            let exp = if e % 2 == 0 { (e / 2).to_string() } else { format!("{e}/2") };
            write!(out, r#"<tspan baseline-shift="super" font-size="{small}">{exp}</tspan>"#).unwrap();
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

fn endpoints((x, y): Key) -> [Key; 2] {
    if x.rem_euclid(2) == 1 {
        [(x, y - 1), (x, y + 1)]
    } else {
        [(x - 1, y), (x + 1, y)]
    }
}

/// Renders the configuration. With a rank-1 lattice `<(r, s)>`, `r >= 1`, the
/// drawing spans one period `1 <= x <= 2r + 1` between dashed boundaries, each
/// edge drawn once at its representative in that window.
pub fn render_svg(c: &VertexConfig, opts: &RenderOptions) -> String {
    let period = c.period().filter(|&(r, _)| r >= 1);
    let mut drawn: Vec<(Key, u32)> = c
        .edges()
        .iter()
        .map(|(&(x, y), &m)| match period {
            Some((r, s)) => {
                let t = (x - 1).div_euclid(2 * r);
                ((x - 2 * r * t, y - 2 * s * t), m)
            }
            None => ((x, y), m),
        })
        .collect();
    drawn.sort();

    let mut xs = vec![-1, 1];
    let mut ys = vec![-1, 1];
    for &(k, _) in &drawn {
        for (x, y) in endpoints(k) {
            xs.push(x);
            ys.push(y);
        }
    }
    let (x0, x1) = match period {
        Some((r, _)) => (1, 2 * r + 1),
        None => (xs.iter().min().unwrap() - 1, xs.iter().max().unwrap() + 1),
    };
    let (y0, y1) = (ys.iter().min().unwrap() - 1, ys.iter().max().unwrap() + 1);

    let u = opts.unit;
    let fs = opts.font_size;
    let small = fs * 2 / 3;
    let px = |x: i64| opts.margin + (x - x0) * u;
    let py = |y: i64| opts.margin + (y1 - y) * u;
    let lattice = escape(&c.lattice().to_string());
    let caption = format!("q0 = {}, lattice {}", c.generator(), c.lattice());
    let caption_width = caption.chars().count() as i64 * fs * 3 / 5;
    let width = (2 * opts.margin + (x1 - x0) * u).max(2 * opts.margin + caption_width);
    let caption_y = opts.margin + (y1 - y0) * u + fs + 8;
    let height = caption_y + opts.margin / 2;

    let mut out = String::new();
    let (i, j) = c.pair();
    let generator = escape(&c.generator().to_string());
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, "<title>configuration on {{{}, {}}} for {generator}</title>", i + 1, j + 1).unwrap();
    writeln!(out, r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#).unwrap();

    writeln!(out, r#"<g stroke="{}" stroke-width="1">"#, opts.grid_color).unwrap();
    let interior = |v: i64, lo: i64, hi: i64| v.rem_euclid(2) == 1 && (period.is_none() || (v != lo && v != hi));
    for x in (x0..=x1).filter(|&v| interior(v, x0, x1)) {
        writeln!(out, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#, px(x), py(y0), py(y1)).unwrap();
    }
    for y in (y0..=y1).filter(|v| v.rem_euclid(2) == 1) {
        writeln!(out, r#"<line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#, py(y), px(x0), px(x1)).unwrap();
    }
    writeln!(out, "</g>").unwrap();

    if period.is_some() {
        writeln!(out, r#"<g stroke="{}" stroke-width="2" stroke-dasharray="6,4">"#, opts.boundary_color).unwrap();
        for x in [x0, x1] {
            writeln!(out, r#"<line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#, px(x), py(y0), py(y1)).unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }

    writeln!(out, r#"<g stroke="{}" stroke-linecap="round">"#, opts.edge_color).unwrap();
    for &(k, m) in &drawn {
        let w = opts.edge_width + opts.edge_step * (i64::from(m) - 1);
        let [a, b] = endpoints(k);
        writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke-width="{w}"/>"#,
            px(a.0),
            py(a.1),
            px(b.0),
            py(b.1)
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();

    writeln!(out, r#"<g font-family="sans-serif" font-size="{fs}" fill="black">"#).unwrap();
    for &((x, y), m) in &drawn {
        let mult = if m >= 2 { format!(" ×{m}") } else { String::new() };
        let (tx, ty, anchor) =
            if x.rem_euclid(2) == 1 { (px(x) + 6, py(y) + fs / 3, "start") } else { (px(x), py(y) - 6, "middle") };
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="2.5"/><text x="{tx}" y="{ty}" text-anchor="{anchor}">{}{mult}</text>"#,
            px(x),
            py(y),
            sigma_label(i, j, x, y, small)
        )
        .unwrap();
    }
    writeln!(out, r#"<text x="{}" y="{caption_y}">q0 = {generator}, lattice {lattice}</text>"#, opts.margin).unwrap();
    writeln!(out, "</g>").unwrap();
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::shift::ShiftSystem;

    fn gl3_config(mult: u32) -> VertexConfig {
        let sys = ShiftSystem::from_i64(&[&[-1, 1, 0], &[0, -1, 1]]).unwrap();
        let q = parse_poly("u1", 2).unwrap();
        VertexConfig::new(&sys, q, (0, 1), [((1, 0), mult), ((0, 1), mult)]).unwrap()
    }

    #[test]
    fn deterministic() {
        let c = gl3_config(1);
        assert_eq!(render_svg(&c, &RenderOptions::default()), render_svg(&c, &RenderOptions::default()));
    }

    #[test]
    fn empty_is_bare_grid() {
        let c = VertexConfig::empty(gl3_config(1).sys(), parse_poly("u1", 2).unwrap(), (0, 1)).unwrap();
        let svg = render_svg(&c, &RenderOptions::default());
        assert!(!svg.contains("stroke-width=\"4\""));
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
    }

    #[test]
    fn edges_are_drawn_once_inside_the_window() {
        let svg = render_svg(&gl3_config(1), &RenderOptions::default());
        assert_eq!(svg.matches("stroke-width=\"4\"").count(), 2);
        assert!(svg.contains("<circle"));
    }

    #[test]
    fn multiplicities_are_labelled() {
        let svg = render_svg(&gl3_config(2), &RenderOptions::default());
        assert!(svg.contains(" ×2</text>"));
        assert!(svg.contains("stroke-width=\"6\""));
    }

    #[test]
    fn labels() {
        assert_eq!(sigma_label(0, 1, 0, 0, 8), "1");
        let l = sigma_label(0, 1, 3, 2, 8);
        assert!(l.contains(">3/2<") && l.matches('σ').count() == 2);
        assert!(!sigma_label(0, 1, 2, 0, 8).contains("super"));
    }
}
