//! Deterministic SVG drawings. Every arc, chord or bond is one `<path>`;
//! nothing else uses `<path>`.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::Write;

use arclab_core::operad::RibbonArcDiagram;
use arclab_core::rna::{Bonding, Side};

fn header(w: f64, h: f64) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">\n"
    )
}

fn polar(cx: f64, cy: f64, r: f64, angle: f64) -> (f64, f64) {
    (cx + r * angle.cos(), cy + r * angle.sin())
}

/// Boundaries in a row (boundary 0 first), slots clockwise from the marked
/// point at the top, arcs as cubic curves bulging away from their boundaries.
pub fn diagram_svg(d: &RibbonArcDiagram) -> String {
    const R: f64 = 60.0;
    const GAP: f64 = 200.0;
    let nb = d.boundaries().len();
    let (w, h) = (GAP * nb as f64 + 40.0, 320.0);
    let center = |b: usize| (120.0 + GAP * b as f64, 160.0);
    let slot_pos = |b: usize, k: usize| {
        let n = d.boundaries()[b].len() as f64;
        let a = -FRAC_PI_2 + TAU * (k as f64 + 0.5) / n;
        let (cx, cy) = center(b);
        (polar(cx, cy, R, a), (a.cos(), a.sin()))
    };
    let mut s = header(w, h);
    for b in 0..nb {
        let (cx, cy) = center(b);
        let _ = writeln!(s, "  <circle cx=\"{cx:.3}\" cy=\"{cy:.3}\" r=\"{R:.3}\" fill=\"none\" stroke=\"black\"/>");
        let _ = writeln!(s, "  <circle cx=\"{cx:.3}\" cy=\"{:.3}\" r=\"4\" fill=\"black\"/>", cy - R);
        let _ = writeln!(s, "  <text x=\"{cx:.3}\" y=\"{:.3}\" text-anchor=\"middle\">{b}</text>", cy + 5.0);
    }
    let mut ends: Vec<Vec<(usize, usize)>> = vec![Vec::new(); d.num_arcs()];
    for (b, slots) in d.boundaries().iter().enumerate() {
        for (k, &a) in slots.iter().enumerate() {
            ends[a].push((b, k));
        }
    }
    for (a, e) in ends.iter().enumerate() {
        let ((p, np), (q, nq)) = (slot_pos(e[0].0, e[0].1), slot_pos(e[1].0, e[1].1));
        let bulge = 70.0;
        let c1 = (p.0 + bulge * np.0, p.1 + bulge * np.1);
        let c2 = (q.0 + bulge * nq.0, q.1 + bulge * nq.1);
        let _ = writeln!(
            s,
            "  <path d=\"M {:.3} {:.3} C {:.3} {:.3} {:.3} {:.3} {:.3} {:.3}\" fill=\"none\" stroke=\"steelblue\"/>",
            p.0, p.1, c1.0, c1.1, c2.0, c2.1, q.0, q.1
        );
        let mid = ((p.0 + q.0 + 0.75 * (c1.0 + c2.0 - p.0 - q.0)) / 2.0, (p.1 + q.1 + 0.75 * (c1.1 + c2.1 - p.1 - q.1)) / 2.0);
        let _ = writeln!(
            s,
            "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"11\" fill=\"steelblue\">{}</text>",
            mid.0, mid.1, d.weights()[a]
        );
    }
    s.push_str("</svg>\n");
    s
}

/// A regular `n`-gon with vertex 0 at the top and the rest clockwise, plus
/// the given diagonals.
pub fn polygon_svg(n: usize, chords: &[(usize, usize)]) -> String {
    const R: f64 = 120.0;
    let pos = |k: usize| polar(150.0, 150.0, R, -FRAC_PI_2 + TAU * k as f64 / n as f64);
    let mut s = header(300.0, 300.0);
    let pts: Vec<String> = (0..n).map(|k| {
        let (x, y) = pos(k);
        format!("{x:.3},{y:.3}")
    }).collect();
    let _ = writeln!(s, "  <polygon points=\"{}\" fill=\"none\" stroke=\"black\"/>", pts.join(" "));
    for &(a, b) in chords {
        let ((x0, y0), (x1, y1)) = (pos(a), pos(b));
        let _ = writeln!(s, "  <path d=\"M {x0:.3} {y0:.3} L {x1:.3} {y1:.3}\" stroke=\"steelblue\"/>");
    }
    for k in 0..n {
        let (x, y) = polar(150.0, 150.0, R + 14.0, -FRAC_PI_2 + TAU * k as f64 / n as f64);
        let _ = writeln!(s, "  <text x=\"{x:.3}\" y=\"{:.3}\" text-anchor=\"middle\" font-size=\"11\">{k}</text>", y + 4.0);
    }
    s.push_str("</svg>\n");
    s
}

/// Backbone left to right, bonds as half-discs above (or below, per site tag).
pub fn bonding_svg(b: &Bonding, sides: Option<&[Side]>) -> String {
    const STEP: f64 = 40.0;
    let m = b.m();
    let x = |i: usize| 30.0 + STEP * i as f64;
    let span = b.bonds().iter().map(|&(i, j)| j - i).max().unwrap_or(1) as f64;
    let base = 40.0 + STEP * span / 2.0;
    let (w, h) = (x(m) + 30.0, 2.0 * base);
    let mut s = header(w, h);
    let _ = writeln!(s, "  <line x1=\"{:.3}\" y1=\"{base:.3}\" x2=\"{:.3}\" y2=\"{base:.3}\" stroke=\"black\"/>", x(0), x(m));
    for i in 0..=m {
        let _ = writeln!(s, "  <circle cx=\"{:.3}\" cy=\"{base:.3}\" r=\"3\" fill=\"black\"/>", x(i));
    }
    for &(i, j) in b.bonds() {
        let below = sides.is_some_and(|t| t[i] == Side::Below);
        let r = (x(j) - x(i)) / 2.0;
        let sweep = if below { 0 } else { 1 };
        let _ = writeln!(
            s,
            "  <path d=\"M {:.3} {base:.3} A {r:.3} {r:.3} 0 0 {sweep} {:.3} {base:.3}\" fill=\"none\" stroke=\"steelblue\"/>",
            x(i),
            x(j)
        );
    }
    s.push_str("</svg>\n");
    s
}
