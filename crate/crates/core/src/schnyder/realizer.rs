use serde::{Deserialize, Serialize};

use super::SchnyderError;
use crate::planar::Triangulation;
use crate::report::{ValidationReport, Violation};
use crate::{Tree, VertexId};

/// A Schnyder wood: three edge-disjoint trees `T1`, `T2`, `T3` rooted at the
/// corners `A1`, `A2`, `A3`, given by the parent of every inner vertex in
/// each tree. Every inner edge is oriented from child to parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realizer {
    parents: Vec<Option<[VertexId; 3]>>,
}

/// How an inner edge is labelled, seen from one endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Incidence {
    /// The edge leaves this vertex in the given tree (it points to the parent).
    Outgoing(Tree),
    /// The edge enters this vertex in the given tree (it comes from a child).
    Incoming(Tree),
}

impl Realizer {
    /// Wraps raw parent arrays without checking them; see [`validate_realizer`].
    pub fn from_parents(parents: Vec<Option<[VertexId; 3]>>) -> Self {
        Realizer { parents }
    }

    pub fn n(&self) -> usize {
        self.parents.len()
    }

    /// Parents of `v` in `(T1, T2, T3)`; `None` for the corners.
    pub fn parents(&self, v: VertexId) -> Option<[VertexId; 3]> {
        self.parents[v.index()]
    }

    pub fn parent(&self, v: VertexId, tree: Tree) -> Option<VertexId> {
        self.parents[v.index()].map(|p| p[tree.index()])
    }

    pub fn parent_table(&self) -> &[Option<[VertexId; 3]>] {
        &self.parents
    }

    /// Label of edge `u - w` as seen from `u`.
    pub fn incidence(&self, u: VertexId, w: VertexId) -> Option<Incidence> {
        if let Some(p) = self.parents(u) {
            if let Some(i) = p.iter().position(|&x| x == w) {
                return Some(Incidence::Outgoing(Tree::from_index(i)));
            }
        }
        if let Some(p) = self.parents(w) {
            if let Some(i) = p.iter().position(|&x| x == u) {
                return Some(Incidence::Incoming(Tree::from_index(i)));
            }
        }
        None
    }

    /// Tree of the inner edge `u - w`, if labelled.
    pub fn edge_tree(&self, u: VertexId, w: VertexId) -> Option<Tree> {
        match self.incidence(u, w)? {
            Incidence::Outgoing(t) | Incidence::Incoming(t) => Some(t),
        }
    }

    /// Path `P_i(v)` from `v` to the root of `tree`, both ends included.
    /// Stops early (without reaching a corner) if the parents form a cycle.
    pub fn path_to_root(&self, v: VertexId, tree: Tree) -> Vec<VertexId> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent(cur, tree) {
            if path.len() > self.n() {
                break;
            }
            path.push(p);
            cur = p;
        }
        path
    }
}

/// Computes a realizer by contracting edges at `A1`.
///
/// Repeatedly contracts into `A1` the lowest-indexed neighbour `x` of the
/// current `A1` (other than `A2`, `A3`) that shares exactly two neighbours
/// with it. Undoing the contractions in reverse order, `x` gets its `T1`
/// edge to `A1`, its `T2` and `T3` edges to the first and last of its
/// remaining neighbours (counterclockwise after `A1`), and the neighbours in
/// between are re-hung below `x` in `T1`.
pub fn compute_realizer(t: &Triangulation) -> Result<Realizer, SchnyderError> {
    let n = t.n();
    if n < 4 {
        return Err(SchnyderError::NoInnerVertex(n));
    }
    let a1 = VertexId::A1;
    let mut merged = vec![false; n];
    let mut touches_a1 = vec![false; n];
    merged[a1.index()] = true;
    for &y in t.neighbors(a1) {
        touches_a1[y.index()] = true;
    }

    // Contraction order with, per contracted vertex, its remaining
    // neighbours in counterclockwise order after the A1 block.
    let mut steps: Vec<(VertexId, Vec<VertexId>)> = Vec::with_capacity(n - 3);
    for step in 0..n - 3 {
        let x = (3..n).map(VertexId::new).find(|&x| {
            !merged[x.index()]
                && touches_a1[x.index()]
                && t.neighbors(x)
                    .iter()
                    .filter(|y| !merged[y.index()] && touches_a1[y.index()])
                    .count()
                    == 2
        });
        let Some(x) = x else {
            return Err(SchnyderError::NotContractible {
                step,
                remaining: n - 3 - step,
            });
        };
        let rot = t.neighbors(x);
        let d = rot.len();
        // end of the (cyclically contiguous) merged block
        let end = (0..d)
            .find(|&i| merged[rot[i].index()] && !merged[rot[(i + 1) % d].index()])
            .ok_or(SchnyderError::NotContractible {
                step,
                remaining: n - 3 - step,
            })?;
        let fan: Vec<VertexId> = (1..d)
            .map(|k| rot[(end + k) % d])
            .take_while(|y| !merged[y.index()])
            .collect();
        let outside = rot.iter().filter(|y| !merged[y.index()]).count();
        if fan.len() < 2 || fan.len() != outside {
            return Err(SchnyderError::NotContractible {
                step,
                remaining: n - 3 - step,
            });
        }
        merged[x.index()] = true;
        for &y in rot {
            touches_a1[y.index()] = true;
        }
        steps.push((x, fan));
    }

    let mut parents: Vec<Option<[VertexId; 3]>> = vec![None; n];
    for (x, fan) in steps.iter().rev() {
        let last = fan.len() - 1;
        parents[x.index()] = Some([a1, fan[0], fan[last]]);
        for &w in &fan[1..last] {
            if let Some(p) = parents[w.index()].as_mut() {
                p[Tree::T1.index()] = *x;
            }
        }
    }
    Ok(Realizer { parents })
}

/// Checks the realizer axioms against the triangulation's embedding:
/// parent edges exist, the three trees are edge-disjoint and cover every
/// inner edge exactly once, every `T_i` path ends at `A_i`, and around each
/// inner vertex the counterclockwise pattern is
/// out `T1`, in `T3`*, out `T2`, in `T1`*, out `T3`, in `T2`*.
pub fn validate_realizer(t: &Triangulation, r: &Realizer) -> ValidationReport {
    let mut report = ValidationReport::new("realizer");
    let n = t.n();
    if r.n() != n {
        report.push(Violation::new(
            "size",
            vec![],
            format!("realizer has {} vertices, triangulation {}", r.n(), n),
        ));
        return report;
    }

    for v in t.vertices() {
        match (v.is_corner(), r.parents(v)) {
            (true, Some(_)) => report.push(Violation::new(
                "corner-parent",
                vec![v],
                format!("corner {v} has parents"),
            )),
            (false, None) => report.push(Violation::new(
                "out-degree",
                vec![v],
                format!("inner vertex {v} lacks parents"),
            )),
            (false, Some(p)) => {
                for tree in Tree::ALL {
                    let w = p[tree.index()];
                    if w.index() >= n || !t.is_adjacent(v, w) {
                        report.push(Violation::new(
                            "parent-not-neighbor",
                            vec![v, w],
                            format!("{tree} parent {w} of {v} is not a neighbour"),
                        ));
                    }
                }
            }
            (true, None) => {}
        }
    }
    if !report.is_valid() {
        return report;
    }

    // every inner edge labelled exactly once, outer edges never
    let mut uses: std::collections::HashMap<(VertexId, VertexId), usize> =
        t.edges().into_iter().map(|e| (e, 0)).collect();
    for v in t.internal_vertices() {
        for w in r.parents(v).unwrap() {
            *uses.get_mut(&(v.min(w), v.max(w))).unwrap() += 1;
        }
    }
    let mut counts: Vec<_> = uses.into_iter().collect();
    counts.sort_unstable();
    for ((a, b), c) in counts {
        let outer = a.is_corner() && b.is_corner();
        let expected = usize::from(!outer);
        if c != expected {
            report.push(Violation::new(
                "edge-label-count",
                vec![a, b],
                format!("edge {a}-{b} carries {c} tree labels, expected {expected}"),
            ));
        }
    }

    for tree in Tree::ALL {
        let root = VertexId::corner(tree);
        for v in t.internal_vertices() {
            let path = r.path_to_root(v, tree);
            let end = *path.last().unwrap();
            if end != root {
                let why = if end.is_corner() {
                    format!("{tree} path from {v} ends at {end} instead of {root}")
                } else {
                    format!("{tree} path from {v} does not reach a root (cycle)")
                };
                report.push(Violation::new("tree-root", vec![v, end], why));
            }
        }
    }

    for u in t.internal_vertices() {
        if let Some(why) = ccw_pattern_violation(t, r, u) {
            report.push(Violation::new("ccw-pattern", vec![u], why));
        }
    }
    report
}

fn ccw_pattern_violation(t: &Triangulation, r: &Realizer, u: VertexId) -> Option<String> {
    let rot = t.neighbors(u);
    let p1 = r.parent(u, Tree::T1)?;
    let start = rot.iter().position(|&w| w == p1)?;
    // out1 (in3)* out2 (in1)* out3 (in2)*
    let mut expected_out = Tree::T1;
    let mut allowed_in: Option<Tree> = None;
    for k in 0..rot.len() {
        let w = rot[(start + k) % rot.len()];
        match r.incidence(u, w) {
            Some(Incidence::Outgoing(tree)) if tree == expected_out => {
                allowed_in = Some(tree.prev());
                expected_out = tree.next();
            }
            Some(Incidence::Incoming(tree)) if Some(tree) == allowed_in => {}
            other => {
                return Some(format!(
                    "around {u}: neighbour {w} is {other:?}, expected Outgoing({expected_out:?}) or Incoming({allowed_in:?})"
                ))
            }
        }
    }
    (expected_out != Tree::T1)
        .then(|| format!("around {u}: not all three outgoing edges were seen"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::fixtures::{k4, t5};

    fn v(i: usize) -> VertexId {
        VertexId::new(i)
    }

    #[test]
    fn k4_realizer() {
        let r = compute_realizer(&k4()).unwrap();
        assert_eq!(
            r.parents(v(3)),
            Some([VertexId::A1, VertexId::A2, VertexId::A3])
        );
        assert!(validate_realizer(&k4(), &r).is_valid());
    }

    #[test]
    fn t5_realizer() {
        let r = compute_realizer(&t5()).unwrap();
        assert_eq!(
            r.parents(v(3)),
            Some([VertexId::A1, VertexId::A2, VertexId::A3])
        );
        assert_eq!(r.parents(v(4)), Some([VertexId::A1, VertexId::A2, v(3)]));
        assert_eq!(r.incidence(v(4), v(3)), Some(Incidence::Outgoing(Tree::T3)));
        assert!(validate_realizer(&t5(), &r).is_valid());
    }

    #[test]
    fn bare_triangle_is_rejected() {
        let t = Triangulation::from_indices(&[vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            compute_realizer(&t).unwrap_err(),
            SchnyderError::NoInnerVertex(3)
        );
    }

    #[test]
    fn swapped_parents_break_the_pattern() {
        let r = Realizer::from_parents(vec![
            None,
            None,
            None,
            Some([VertexId::A2, VertexId::A1, VertexId::A3]),
        ]);
        let report = validate_realizer(&k4(), &r);
        assert!(
            report.first_violation_with("ccw-pattern").is_some(),
            "{report:?}"
        );
        assert_eq!(
            report.first_violation_with("ccw-pattern").unwrap().vertices,
            vec![v(3)]
        );
    }

    #[test]
    fn double_labelled_edge_is_reported() {
        // v's T3 parent redirected to A3: edge v-u loses its label, v-A3 is not an edge
        let mut parents = compute_realizer(&t5()).unwrap().parent_table().to_vec();
        parents[4] = Some([VertexId::A1, VertexId::A2, VertexId::A3]);
        let report = validate_realizer(&t5(), &Realizer::from_parents(parents));
        assert!(report.first_violation_with("parent-not-neighbor").is_some());
    }

    #[test]
    fn cycle_in_a_tree_is_reported() {
        let t = t5();
        let mut parents = compute_realizer(&t).unwrap().parent_table().to_vec();
        // u's T3 parent becomes v, v's is u: a 2-cycle in T3
        parents[3].as_mut().unwrap()[2] = v(4);
        let report = validate_realizer(&t, &Realizer::from_parents(parents));
        assert!(report.first_violation_with("tree-root").is_some());
        assert!(report.first_violation_with("edge-label-count").is_some());
    }
}
