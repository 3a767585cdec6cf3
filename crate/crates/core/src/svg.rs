//! Static SVG rendering of `(p, q)` charts: one dot per class at
//! `(stem, weight) = (p - q, q)`, vertical segments for rho towers and
//! `h0` multiplications.

use std::fmt::Write as _;

use crate::chart::{Chart, Grading};
use crate::deformation::RhoModule;
use crate::ext::Resolution;

const CELL: i64 = 24;
const MARGIN: i64 = 40;
const DOT: i64 = 3;

/// A vertical segment from `(stem, q_from)` to `(stem, q_to)`, with dot
/// slots selecting the horizontal offset within the cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub stem: i64,
    pub from: (i64, usize),
    pub to: (i64, usize),
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Frame {
    min_stem: i64,
    max_q: i64,
    min_q: i64,
}

impl Frame {
    fn x(&self, stem: i64, slot: usize, of: usize) -> i64 {
        let spread = (CELL / 2) / of.max(1) as i64;
        let offset = (slot as i64 * 2 - (of as i64 - 1)) * spread / 2;
        MARGIN + (stem - self.min_stem) * CELL + offset
    }

    fn y(&self, q: i64) -> i64 {
        MARGIN + (self.max_q - q) * CELL
    }
}

/// Renders `chart` (graded by `(p, q)`), optionally with rho towers from a
/// module and extra vertical segments such as `h0` lines.
pub fn render_chart(chart: &Chart, towers: Option<&RhoModule>, segments: &[Segment]) -> String {
    assert_eq!(chart.grading(), Grading::Pq, "SVG charts are drawn in (p,q)");
    let points: Vec<(i64, i64)> = chart.entries().map(|(k, _)| (k[0] - k[1], k[1])).collect();
    let frame = Frame {
        min_stem: points.iter().map(|p| p.0).min().unwrap_or(0).min(0),
        max_q: points.iter().map(|p| p.1).max().unwrap_or(0).max(0),
        min_q: points.iter().map(|p| p.1).min().unwrap_or(0).min(0),
    };
    let max_stem = points.iter().map(|p| p.0).max().unwrap_or(0).max(0);
    let width = 2 * MARGIN + (max_stem - frame.min_stem) * CELL;
    let height = 2 * MARGIN + (frame.max_q - frame.min_q) * CELL;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#).unwrap();

    // grid and axis labels
    out.push_str(r##"<g stroke="#e0e0e0" stroke-width="1">"##);
    out.push('\n');
    for stem in frame.min_stem..=max_stem {
        let x = frame.x(stem, 0, 1);
        writeln!(out, r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#, frame.y(frame.max_q), frame.y(frame.min_q)).unwrap();
    }
    for q in frame.min_q..=frame.max_q {
        let y = frame.y(q);
        writeln!(
            out,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#,
            frame.x(frame.min_stem, 0, 1),
            frame.x(max_stem, 0, 1)
        )
        .unwrap();
    }
    out.push_str("</g>\n");
    out.push_str(r##"<g font-family="sans-serif" font-size="9" fill="#555">"##);
    out.push('\n');
    for stem in frame.min_stem..=max_stem {
        writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{stem}</text>"#, frame.x(stem, 0, 1), height - MARGIN / 3).unwrap();
    }
    for q in frame.min_q..=frame.max_q {
        writeln!(out, r#"<text x="{}" y="{}" text-anchor="end">{q}</text>"#, MARGIN / 2, frame.y(q) + 3).unwrap();
    }
    out.push_str("</g>\n");

    let slots = |stem: i64, q: i64| chart.dim(&[stem + q, q]);

    if let Some(m) = towers {
        out.push_str(r##"<g stroke="#c03030" stroke-width="1.5">"##);
        out.push('\n');
        for t in m.towers() {
            let stem = t.stem();
            let top = t.base.1;
            let bottom = match t.length {
                Some(k) => top - (k as i64 - 1),
                None => frame.min_q,
            };
            if top == bottom && t.length.is_some() {
                continue;
            }
            let x = frame.x(stem, 0, 1);
            writeln!(out, r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#, frame.y(top), frame.y(bottom)).unwrap();
        }
        out.push_str("</g>\n");
    }

    if !segments.is_empty() {
        out.push_str(r#"<g stroke="black" stroke-width="1">"#);
        out.push('\n');
        for s in segments {
            let x1 = frame.x(s.stem, s.from.1, slots(s.stem, s.from.0));
            let x2 = frame.x(s.stem, s.to.1, slots(s.stem, s.to.0));
            writeln!(out, r#"<line x1="{x1}" y1="{}" x2="{x2}" y2="{}"/>"#, frame.y(s.from.0), frame.y(s.to.0)).unwrap();
        }
        out.push_str("</g>\n");
    }

    out.push_str("<g fill=\"black\">\n");
    for (k, e) in chart.entries() {
        let (p, q) = (k[0], k[1]);
        let stem = p - q;
        for slot in 0..e.dim {
            let title = e.labels.get(slot).map(String::as_str).unwrap_or("");
            writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{DOT}"><title>{} ({p},{q})</title></circle>"#,
                frame.x(stem, slot, e.dim),
                frame.y(q),
                escape(title)
            )
            .unwrap();
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// `h0` multiplications of a resolution as segments in `(stem, q)`.
pub fn h0_segments(res: &Resolution, max_s: u32, max_t: u32) -> Vec<Segment> {
    let mut out = Vec::new();
    for s in 0..max_s {
        for t in 0..max_t {
            for (k, k2) in res.h_product(0, s, t) {
                out.push(Segment {
                    stem: t as i64 - s as i64,
                    from: (t as i64, k),
                    to: (t as i64 + 1, k2),
                });
            }
        }
    }
    out
}
