use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{region_counts, Realizer, SchnyderError};
use crate::planar::Triangulation;
use crate::report::{ValidationReport, Violation};
use crate::VertexId;

/// Exact barycentric drawing: vertex `v` sits at `coords[v] / denom` with
/// respect to the corners `A1`, `A2`, `A3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Drawing {
    coords: Vec<[i64; 3]>,
    denom: i64,
}

/// Floating-point image of a drawing with `A1 = (1/2, sqrt(3)/2)`,
/// `A2 = (0, 0)`, `A3 = (1, 0)`. Presentation only.
#[derive(Debug, Clone, PartialEq)]
pub struct CartesianPlacement {
    pub points: Vec<[f64; 2]>,
}

impl Drawing {
    /// Wraps raw coordinates without checking them; see [`validate_drawing`].
    pub fn new(coords: Vec<[i64; 3]>, denom: i64) -> Self {
        Drawing { coords, denom }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn coord(&self, v: VertexId) -> [i64; 3] {
        self.coords[v.index()]
    }

    pub fn coords(&self) -> &[[i64; 3]] {
        &self.coords
    }

    pub fn coords_mut(&mut self) -> &mut [[i64; 3]] {
        &mut self.coords
    }

    /// Integer plane coordinates `(x1 + 2 x3, x1)`. The true point is
    /// `(X / 2d, sqrt(3) Y / 2d)`, so orientations and Euclidean distance
    /// comparisons can be done exactly with `dX^2 + 3 dY^2`.
    pub fn scaled_xy(&self, v: VertexId) -> [i64; 2] {
        let [x1, _, x3] = self.coords[v.index()];
        [x1 + 2 * x3, x1]
    }

    /// Exact squared Euclidean distance scaled by `4 d^2`.
    pub fn scaled_dist2(&self, a: VertexId, b: VertexId) -> i128 {
        Self::scaled_dist2_of(self.coords[a.index()], self.coords[b.index()])
    }

    /// [`Drawing::scaled_dist2`] for two raw coordinate rows.
    pub fn scaled_dist2_of(a: [i64; 3], b: [i64; 3]) -> i128 {
        let dx = ((a[0] + 2 * a[2]) - (b[0] + 2 * b[2])) as i128;
        let dy = (a[0] - b[0]) as i128;
        dx * dx + 3 * dy * dy
    }

    pub fn to_cartesian(&self) -> CartesianPlacement {
        let d = self.denom as f64;
        let h = 3f64.sqrt() / 2.0;
        CartesianPlacement {
            points: self
                .coords
                .iter()
                .map(|&[x1, _, x3]| [(0.5 * x1 as f64 + x3 as f64) / d, h * x1 as f64 / d])
                .collect(),
        }
    }
}

/// Schnyder drawing: each vertex placed at its face counts over `2n - 5`.
pub fn compute_drawing(t: &Triangulation, r: &Realizer) -> Result<Drawing, SchnyderError> {
    if t.n() < 4 {
        return Err(SchnyderError::NoInnerVertex(t.n()));
    }
    Ok(Drawing {
        coords: region_counts(t, r),
        denom: 2 * t.n() as i64 - 5,
    })
}

/// Row invariants: non-negative entries summing to the denominator, corners
/// at the unit triples, and pairwise distinct rows.
pub fn validate_drawing(t: &Triangulation, d: &Drawing) -> ValidationReport {
    let mut report = ValidationReport::new("drawing");
    let n = t.n();
    let denom = 2 * n as i64 - 5;
    if d.n() != n || d.denom() != denom {
        report.push(Violation::new(
            "shape",
            vec![],
            format!(
                "drawing has {} rows over {}, expected {n} rows over {denom}",
                d.n(),
                d.denom()
            ),
        ));
        return report;
    }
    for v in t.vertices() {
        let c = d.coord(v);
        if c.iter().any(|&x| x < 0) || c.iter().sum::<i64>() != denom {
            report.push(Violation::new(
                "row",
                vec![v],
                format!("{v} at {c:?} is not a barycentric row over {denom}"),
            ));
        }
        if v.is_corner() {
            let mut unit = [0; 3];
            unit[v.index()] = denom;
            if c != unit {
                report.push(Violation::new(
                    "corner",
                    vec![v],
                    format!("corner {v} at {c:?}, expected {unit:?}"),
                ));
            }
        }
    }
    let mut rows: Vec<([i64; 3], VertexId)> = t.vertices().map(|v| (d.coord(v), v)).collect();
    rows.sort_unstable();
    for w in rows.windows(2) {
        if w[0].0 == w[1].0 {
            report.push(Violation::new(
                "duplicate",
                vec![w[0].1, w[1].1],
                format!("{} and {} share {:?}", w[0].1, w[1].1, w[0].0),
            ));
        }
    }
    report
}

/// Sign of the orientation of three points given by barycentric rows with a
/// common sum: `1` counterclockwise, `-1` clockwise, `0` collinear.
pub fn orientation(a: [i64; 3], b: [i64; 3], c: [i64; 3]) -> i32 {
    let m = |r: [i64; 3]| r.map(i128::from);
    let (a, b, c) = (m(a), m(b), m(c));
    let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0]);
    det.signum() as i32
}

/// `p` lies on the closed segment `ab`, assuming the three are collinear.
fn on_segment(a: [i64; 3], b: [i64; 3], p: [i64; 3]) -> bool {
    (0..3).all(|k| a[k].min(b[k]) <= p[k] && p[k] <= a[k].max(b[k]))
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: [i64; 3], b: [i64; 3], c: [i64; 3], d: [i64; 3]) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// No two straight-line edges meet except at a shared endpoint, and edges
/// sharing an endpoint do not overlap. `O(m^2)`.
pub fn validate_planarity(t: &Triangulation, d: &Drawing) -> ValidationReport {
    let mut report = ValidationReport::new("planarity");
    let edges = t.edges();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in &edges[i + 1..] {
            let (pa, pb, pc, pe) = (d.coord(a), d.coord(b), d.coord(c), d.coord(e));
            let shared = [a, b].iter().find(|x| **x == c || **x == e).copied();
            let bad = match shared {
                None => segments_intersect(pa, pb, pc, pe),
                Some(s) => {
                    // other endpoints must not lie on the same ray from s
                    let x = if s == a { pb } else { pa };
                    let y = if s == c { pe } else { pc };
                    let ps = d.coord(s);
                    orientation(ps, x, y) == 0
                        && (0..3).all(|k| (x[k] - ps[k]).signum() == (y[k] - ps[k]).signum())
                }
            };
            if bad {
                report.push(Violation::new(
                    "crossing",
                    vec![a, b, c, e],
                    format!("edges {a}-{b} and {c}-{e} intersect"),
                ));
            }
        }
    }
    report
}

/// `.bary` text: a header `denom D`, then one line `v x1 x2 x3` per vertex.
pub fn format_bary(d: &Drawing) -> String {
    let mut out = String::new();
    writeln!(out, "denom {}", d.denom).unwrap();
    for (v, [a, b, c]) in d.coords.iter().enumerate() {
        writeln!(out, "{v} {a} {b} {c}").unwrap();
    }
    out
}

pub fn parse_bary(text: &str) -> Result<Drawing, SchnyderError> {
    let err = |line: usize, message: String| SchnyderError::Format { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing `denom` header".into()))?;
    let denom = header
        .strip_prefix("denom")
        .and_then(|s| s.trim().parse::<i64>().ok())
        .ok_or_else(|| err(hl, format!("expected `denom <int>`, found `{header}`")))?;
    let mut coords = Vec::new();
    for (line, body) in lines {
        let nums: Vec<i64> = body
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| err(line, format!("bad number in `{body}`")))?;
        if nums.len() != 4 || nums[0] != coords.len() as i64 {
            return Err(err(
                line,
                format!("expected `{} x1 x2 x3`, found `{body}`", coords.len()),
            ));
        }
        coords.push([nums[1], nums[2], nums[3]]);
    }
    Ok(Drawing { coords, denom })
}
