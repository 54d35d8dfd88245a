//! Pictures of the `(c1, c2)` plane at fixed `(k1, k2)`: an ASCII grid and
//! an SVG with one polygon per nonempty region.

use std::fmt::Write;

use crate::weights_regions::{lattice, scan_bound, Region, Weights};

/// One character per region in the ASCII grid; primes are upper case.
pub fn region_char(r: Region) -> char {
    match r {
        Region::A => 'a',
        Region::APrime => 'A',
        Region::B => 'b',
        Region::BPrime => 'B',
        Region::C => 'c',
        Region::D => 'd',
        Region::DPrime => 'D',
        Region::E => 'e',
        Region::F => 'f',
    }
}

fn colour(r: Region) -> &'static str {
    match r {
        Region::A => "#8dd3c7",
        Region::APrime => "#b3e2cd",
        Region::B => "#fb8072",
        Region::BPrime => "#fdb4ae",
        Region::C => "#80b1d3",
        Region::D => "#fdb462",
        Region::DPrime => "#fed9a6",
        Region::E => "#bc80bd",
        Region::F => "#b3de69",
    }
}

/// Rows run from `c2 = cmax` down to `1`; `.` marks parity-invalid points.
pub fn ascii(k1: i64, k2: i64, cmax: i64) -> String {
    let mut out = String::new();
    writeln!(out, "(k1, k2) = ({k1}, {k2}); rows c2 = {cmax}..1, columns c1 = 1..{cmax}").unwrap();
    for c2 in (1..=cmax).rev() {
        write!(out, "{c2:>3} ").unwrap();
        for c1 in 1..=cmax {
            let ch = Weights::new(k1, k2, c1, c2).map(|w| region_char(w.classify())).unwrap_or('.');
            out.push(ch);
        }
        out.push('\n');
    }
    out.push_str("legend: a b c d e f, A B D = a' b' d'\n");
    out
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Counter-clockwise hull, monotone chain.
fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Region polygons: hull of the unit diamonds around each lattice point.
pub fn region_polygons(k1: i64, k2: i64, cmax: i64) -> Vec<(Region, Vec<(i64, i64)>, Vec<Weights>)> {
    let points: Vec<Weights> = lattice(k1, k2, cmax).collect();
    Region::ALL
        .iter()
        .filter_map(|&r| {
            let members: Vec<Weights> = points.iter().copied().filter(|w| w.classify() == r).collect();
            if members.is_empty() {
                return None;
            }
            let corners = members
                .iter()
                .flat_map(|w| [(w.c1 + 1, w.c2), (w.c1 - 1, w.c2), (w.c1, w.c2 + 1), (w.c1, w.c2 - 1)])
                .collect();
            Some((r, convex_hull(corners), members))
        })
        .collect()
}

const UNIT: i64 = 12;
const MARGIN: i64 = 30;

/// SVG of the scan box `[1, k1 + k2 + 2]^2`.
pub fn svg(k1: i64, k2: i64) -> String {
    svg_with_panel(k1, k2, &[])
}

/// SVG with extra text lines drawn to the right of the plane.
pub fn svg_with_panel(k1: i64, k2: i64, panel: &[String]) -> String {
    let cmax = scan_bound(k1, k2);
    let side = (cmax + 1) * UNIT;
    let panel_width = if panel.is_empty() { 0 } else { 360 };
    let width = side + 2 * MARGIN + panel_width;
    let height = side + 2 * MARGIN;
    let x = |c: i64| MARGIN + c * UNIT;
    let y = |c: i64| MARGIN + side - c * UNIT;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="10">"#
    )
    .unwrap();
    writeln!(s, r#"<title>regions for (k1, k2) = ({k1}, {k2})</title>"#).unwrap();
    writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        x(0),
        y(0),
        x(cmax + 1),
        y(0)
    )
    .unwrap();
    writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        x(0),
        y(0),
        x(0),
        y(cmax + 1)
    )
    .unwrap();
    writeln!(s, r#"<text x="{}" y="{}">c1</text>"#, x(cmax + 1) - 10, y(0) + 20).unwrap();
    writeln!(s, r#"<text x="{}" y="{}">c2</text>"#, x(0) - 25, y(cmax + 1)).unwrap();
    let polys = region_polygons(k1, k2, cmax);
    for (r, hull, _) in &polys {
        let pts: Vec<String> = hull.iter().map(|&(a, b)| format!("{},{}", x(a), y(b))).collect();
        writeln!(
            s,
            r#"<polygon class="region" data-region="{}" points="{}" fill="{}" fill-opacity="0.5" stroke="black"/>"#,
            r.label(),
            pts.join(" "),
            colour(*r)
        )
        .unwrap();
    }
    for (r, _, members) in &polys {
        for w in members {
            writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="2" fill="{}" stroke="black" stroke-width="0.3" data-region="{}"/>"#,
                x(w.c1),
                y(w.c2),
                colour(*r),
                r.label()
            )
            .unwrap();
        }
    }
    for (r, _, members) in &polys {
        let n = members.len() as i64;
        let (sx, sy) = members.iter().fold((0, 0), |(a, b), w| (a + w.c1, b + w.c2));
        // centroid in pixel units, rounded so output is stable
        let cx = MARGIN + (sx * UNIT + n / 2) / n;
        let cy = MARGIN + side - (sy * UNIT + n / 2) / n;
        writeln!(s, r#"<text class="label" x="{cx}" y="{cy}" font-size="14" font-weight="bold">{}</text>"#, r.label())
            .unwrap();
    }
    for (i, line) in panel.iter().enumerate() {
        writeln!(s, r#"<text x="{}" y="{}">{}</text>"#, side + 2 * MARGIN, MARGIN + 14 * i as i64, escape(line)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
