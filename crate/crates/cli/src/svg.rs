//! SVG rendering of a drawing. Floating point appears only here.

use std::fmt::Write as _;

use schnyder_core::{Drawing, Realizer, Tree, Triangulation};

const TREE_COLORS: [&str; 3] = ["#d62728", "#2ca02c", "#1f77b4"];
const PLAIN: &str = "#555555";
const MARGIN: f64 = 40.0;

fn num(x: f64) -> String {
    assert!(x.is_finite(), "non-finite SVG coordinate");
    format!("{x:.6}")
}

/// Plane coordinates are drawn as `(x, y) * scale` inside a group that flips
/// the y axis, so `A2` is the bottom left corner and `A1` the apex.
pub fn render(t: &Triangulation, d: &Drawing, r: Option<&Realizer>, scale: f64) -> String {
    let pts = d.to_cartesian().points;
    let h = 3f64.sqrt() / 2.0 * scale;
    let (w, ht) = (scale + 2.0 * MARGIN, h + 2.0 * MARGIN + 30.0);
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(ht),
        num(w),
        num(ht)
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<g transform="translate({} {}) scale(1 -1)">"#,
        num(MARGIN),
        num(MARGIN + h)
    )
    .unwrap();
    for (a, b) in t.edges() {
        let outer = a.is_corner() && b.is_corner();
        let (color, tree) = match r.and_then(|r| r.edge_tree(a, b)) {
            Some(tr) if !outer => (TREE_COLORS[tr.index()], Some(tr)),
            _ if outer => ("#000000", None),
            _ => (PLAIN, None),
        };
        let class = tree.map_or("outer".to_string(), |tr| tr.to_string());
        let (pa, pb) = (pts[a.index()], pts[b.index()]);
        writeln!(
            s,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="1.5"/>"#,
            num(pa[0] * scale),
            num(pa[1] * scale),
            num(pb[0] * scale),
            num(pb[1] * scale)
        )
        .unwrap();
    }
    for v in t.vertices() {
        let p = pts[v.index()];
        writeln!(
            s,
            r#"<circle id="v{}" cx="{}" cy="{}" r="3.5" fill="black"/>"#,
            v.index(),
            num(p[0] * scale),
            num(p[1] * scale)
        )
        .unwrap();
    }
    writeln!(s, "</g>").unwrap();
    for v in t.vertices() {
        let p = pts[v.index()];
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="11" font-family="sans-serif">{v}</text>"#,
            num(MARGIN + p[0] * scale + 5.0),
            num(MARGIN + h - p[1] * scale - 5.0)
        )
        .unwrap();
    }
    if r.is_some() {
        for tree in Tree::ALL {
            let x = MARGIN + tree.index() as f64 * 70.0;
            let y = ht - 12.0;
            writeln!(
                s,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="3"/><text x="{}" y="{}" font-size="12" font-family="sans-serif">{tree}</text>"#,
                num(x),
                num(y - 4.0),
                num(x + 24.0),
                num(y - 4.0),
                TREE_COLORS[tree.index()],
                num(x + 30.0),
                num(y)
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use schnyder_core::schnyder::{compute_drawing, compute_realizer};

    fn t5() -> Triangulation {
        Triangulation::from_indices(&[
            vec![1, 4, 3, 2],
            vec![2, 3, 4, 0],
            vec![0, 3, 1],
            vec![0, 4, 1, 2],
            vec![0, 1, 3],
        ])
        .unwrap()
    }

    #[test]
    fn t5_vertex_position() {
        let t = t5();
        let r = compute_realizer(&t).unwrap();
        let d = compute_drawing(&t, &r).unwrap();
        let svg = render(&t, &d, Some(&r), 100.0);
        // (2/5, sqrt(3)/5) * 100
        let y = format!("{:.6}", 3f64.sqrt() / 5.0 * 100.0);
        assert!(
            svg.contains(&format!(r#"<circle id="v4" cx="40.000000" cy="{y}""#)),
            "{svg}"
        );
        assert_eq!(svg.matches("<line class=\"T").count(), 6);
        assert_eq!(svg.matches("<line class=\"outer\"").count(), 3);
        assert!(!svg.contains("NaN"));
    }
}
