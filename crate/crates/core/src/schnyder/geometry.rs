//! Exact checks of the two geometric properties of Schnyder drawings that
//! make them saturated: the three-wedge property of outgoing edges and the
//! empty enclosing triangle of every outgoing edge.
//!
//! Under the equilateral placement the lines of slope 0, 60 and 120 degrees
//! are the level lines of the three barycentric coordinates, so both
//! properties reduce to sign tests on integer coordinate differences.

use super::{Drawing, Realizer};
use crate::planar::Triangulation;
use crate::report::{ValidationReport, Violation};
use crate::{Tree, VertexId};

/// Wedge of a direction vector `delta`: `Some(i)` when `delta_i > 0` and the
/// other two entries are `<= 0`. The boolean is set when one of them is zero,
/// i.e. the direction lies on the wedge boundary.
pub fn wedge_of(delta: [i64; 3]) -> Option<(Tree, bool)> {
    let pos: Vec<usize> = (0..3).filter(|&k| delta[k] > 0).collect();
    if pos.len() != 1 {
        return None;
    }
    let i = pos[0];
    let boundary = (0..3).any(|k| k != i && delta[k] == 0);
    Some((Tree::from_index(i), boundary))
}

fn delta(d: &Drawing, from: VertexId, to: VertexId) -> [i64; 3] {
    let (a, b) = (d.coord(from), d.coord(to));
    [b[0] - a[0], b[1] - a[1], b[2] - a[2]]
}

/// The `T_i` edge leaving every inner vertex points into wedge `i`
/// (slope in [60,120], [180,240] or [300,360] degrees for `i = 1, 2, 3`),
/// one outgoing edge per wedge. Edges on a wedge boundary are logged as notes.
pub fn validate_three_wedge(t: &Triangulation, r: &Realizer, d: &Drawing) -> ValidationReport {
    let mut report = ValidationReport::new("three-wedge");
    for u in t.internal_vertices() {
        let Some(parents) = r.parents(u) else {
            continue;
        };
        let mut per_wedge = [0usize; 3];
        for tree in Tree::ALL {
            let v = parents[tree.index()];
            let dv = delta(d, u, v);
            match wedge_of(dv) {
                Some((w, boundary)) => {
                    per_wedge[w.index()] += 1;
                    if w != tree {
                        report.push(Violation::new(
                            "wedge",
                            vec![u, v],
                            format!(
                                "{tree} edge {u}->{v} with difference {dv:?} falls in wedge {w}"
                            ),
                        ));
                    } else if boundary {
                        report.note(Violation::new(
                            "wedge-boundary",
                            vec![u, v],
                            format!("{tree} edge {u}->{v} with difference {dv:?} lies on the wedge boundary"),
                        ));
                    }
                }
                None => report.push(Violation::new(
                    "wedge",
                    vec![u, v],
                    format!("{tree} edge {u}->{v} with difference {dv:?} lies in no wedge"),
                )),
            }
        }
        if per_wedge != [1, 1, 1] {
            report.push(Violation::new(
                "wedge-count",
                vec![u],
                format!("outgoing edges of {u} per wedge: {per_wedge:?}"),
            ));
        }
    }
    report
}

/// Open equilateral triangle spanned by the outgoing edge `u -> v` of tree `i`:
/// `{p : p_i < v_i, p_{i+1} < u_{i+1}, p_{i-1} < u_{i-1}}`. Its apex is `u`,
/// its sides through `u` have the two slopes of the wedge boundaries and its
/// third side lies on the level line of `v`.
pub fn strictly_inside_enclosing(tree: Tree, u: [i64; 3], v: [i64; 3], p: [i64; 3]) -> bool {
    let (i, nx, pv) = (tree.index(), tree.next().index(), tree.prev().index());
    p[i] < v[i] && p[nx] < u[nx] && p[pv] < u[pv]
}

/// No vertex lies strictly inside the enclosing triangle of any outgoing edge.
/// Vertices on the triangle boundary are allowed.
pub fn validate_enclosing_triangle(
    t: &Triangulation,
    r: &Realizer,
    d: &Drawing,
) -> ValidationReport {
    let mut report = ValidationReport::new("enclosing-triangle");
    for u in t.internal_vertices() {
        let Some(parents) = r.parents(u) else {
            continue;
        };
        for tree in Tree::ALL {
            let v = parents[tree.index()];
            let (cu, cv) = (d.coord(u), d.coord(v));
            for w in t.vertices() {
                if w != u && w != v && strictly_inside_enclosing(tree, cu, cv, d.coord(w)) {
                    report.push(Violation::new(
                        "enclosing",
                        vec![u, v, w],
                        format!("{w} lies inside the enclosing triangle of {tree} edge {u}->{v}"),
                    ));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::fixtures::{k4, t5};
    use crate::schnyder::{compute_drawing, compute_realizer};

    fn setup(t: &Triangulation) -> (Realizer, Drawing) {
        let r = compute_realizer(t).unwrap();
        let d = compute_drawing(t, &r).unwrap();
        (r, d)
    }

    #[test]
    fn wedge_classification() {
        assert_eq!(wedge_of([2, -1, -1]), Some((Tree::T1, false)));
        assert_eq!(wedge_of([-1, -1, 2]), Some((Tree::T3, false)));
        assert_eq!(wedge_of([-2, 2, 0]), Some((Tree::T2, true)));
        assert_eq!(wedge_of([1, 1, -2]), None);
    }

    #[test]
    fn k4_and_t5_satisfy_both_properties() {
        for t in [k4(), t5()] {
            let (r, d) = setup(&t);
            let w = validate_three_wedge(&t, &r, &d);
            assert!(w.is_valid() && w.notes.is_empty(), "{w:?}");
            assert!(validate_enclosing_triangle(&t, &r, &d).is_valid());
        }
    }

    #[test]
    fn t5_edge_to_a1_excludes_u() {
        let (_, d) = setup(&t5());
        let (u, v) = (VertexId::new(3), VertexId::new(4));
        assert!(!strictly_inside_enclosing(
            Tree::T1,
            d.coord(v),
            d.coord(VertexId::A1),
            d.coord(u)
        ));
        // the opposite triangle (apex at the parent) of u -> A1 does contain v
        assert!(!strictly_inside_enclosing(
            Tree::T1,
            d.coord(u),
            d.coord(VertexId::A1),
            d.coord(v)
        ));
        let [u1, _, _] = d.coord(u);
        let [v1, v2, v3] = d.coord(v);
        assert!(v1 > u1 && v2 > 0 && v3 > 0);
    }

    #[test]
    fn planted_vertex_is_caught() {
        let t = t5();
        let (r, mut d) = setup(&t);
        // refine the grid tenfold, then plant u inside the triangle of v -> A1
        for c in d.coords_mut() {
            *c = c.map(|x| 10 * x);
        }
        assert!(validate_enclosing_triangle(&t, &r, &d).is_valid());
        d.coords_mut()[3] = [35, 10, 5];
        let report = validate_enclosing_triangle(&t, &r, &d);
        let hit = report.first_violation_with("enclosing").unwrap();
        assert_eq!(
            hit.vertices,
            vec![VertexId::new(4), VertexId::A1, VertexId::new(3)]
        );
    }

    #[test]
    fn swapped_coordinates_violate_the_wedges() {
        let t = t5();
        let (r, mut d) = setup(&t);
        d.coords_mut().swap(3, 4);
        let report = validate_three_wedge(&t, &r, &d);
        assert!(report.first_violation_with("wedge").is_some());
    }
}
