//! Sizes of the three Schnyder regions of every vertex, counted in inner faces.
//!
//! For an inner vertex `v`, the paths `P_{i-1}(v)` and `P_{i+1}(v)` together
//! with the outer edge `A_{i-1} A_{i+1}` bound the region `R_i(v)`. The count
//! `f_i(v)` is the number of inner faces inside it; the three counts of a
//! vertex sum to `2n - 5`.

use std::collections::HashSet;

use super::Realizer;
use crate::planar::Triangulation;
use crate::{Tree, VertexId};

/// Per-tree quantities needed by the linear-time formula.
struct TreeTables {
    /// edges on `P_i(v)`
    depth: Vec<i64>,
    /// vertices in the `T_i` subtree of `v`, `v` included
    subtree: Vec<i64>,
}

fn tree_tables(r: &Realizer, tree: Tree) -> TreeTables {
    let n = r.n();
    let mut depth = vec![-1i64; n];
    depth[..3].fill(0);
    let mut stack = Vec::new();
    for v in 3..n {
        let mut cur = VertexId::new(v);
        while depth[cur.index()] < 0 {
            stack.push(cur);
            cur = r.parent(cur, tree).expect("inner vertices have parents");
            assert!(stack.len() <= n, "{tree} contains a cycle");
        }
        let mut d = depth[cur.index()];
        while let Some(w) = stack.pop() {
            d += 1;
            depth[w.index()] = d;
        }
    }

    let mut order: Vec<usize> = (3..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(depth[v]));
    let mut subtree = vec![1i64; n];
    for v in order {
        let p = r.parent(VertexId::new(v), tree).unwrap();
        if !p.is_corner() {
            subtree[p.index()] += subtree[v];
        }
    }
    TreeTables { depth, subtree }
}

/// `sum_{w in P_along(v), w inner} subtree_of(w)`, for every vertex.
fn path_sums(r: &Realizer, along: Tree, along_depth: &[i64], subtree_of: &[i64]) -> Vec<i64> {
    let n = r.n();
    let mut order: Vec<usize> = (3..n).collect();
    order.sort_by_key(|&v| along_depth[v]);
    let mut acc = vec![0i64; n];
    for v in order {
        let p = r.parent(VertexId::new(v), along).unwrap();
        acc[v] = subtree_of[v] + acc[p.index()];
    }
    acc
}

/// Face counts `(f1, f2, f3)` per vertex in `O(n)`.
///
/// The inner vertices of `R_i(v)` are exactly the proper `T_i`-descendants
/// of the inner vertices on its two bounding paths, which gives
/// `f_i = 2 * S - d_{i-1} - d_{i+1} + 1`, with `S` the sum of `T_i` subtree
/// sizes over the inner vertices of both paths and `d` the path lengths.
pub fn region_counts(t: &Triangulation, r: &Realizer) -> Vec<[i64; 3]> {
    let n = t.n();
    let total = 2 * n as i64 - 5;
    let tables: Vec<TreeTables> = Tree::ALL.iter().map(|&tr| tree_tables(r, tr)).collect();

    let mut out = vec![[0i64; 3]; n];
    for (c, row) in out.iter_mut().take(3).enumerate() {
        row[c] = total;
    }
    for tree in Tree::ALL {
        let i = tree.index();
        let (prev, next) = (tree.prev(), tree.next());
        let via_prev = path_sums(r, prev, &tables[prev.index()].depth, &tables[i].subtree);
        let via_next = path_sums(r, next, &tables[next.index()].depth, &tables[i].subtree);
        for v in 3..n {
            let s = via_prev[v] + via_next[v] - tables[i].subtree[v];
            out[v][i] = 2 * s - tables[prev.index()].depth[v] - tables[next.index()].depth[v] + 1;
        }
    }
    out
}

/// Independent check of [`region_counts`]: walks the two bounding paths of
/// every region and flood-fills inner faces from the outer side without
/// crossing a path edge. Quadratic; meant for small instances.
pub fn region_counts_oracle(t: &Triangulation, r: &Realizer) -> Vec<[i64; 3]> {
    let n = t.n();
    let total = 2 * n as i64 - 5;
    let mut out = vec![[0i64; 3]; n];
    for (c, row) in out.iter_mut().take(3).enumerate() {
        row[c] = total;
    }
    for v in t.internal_vertices() {
        for tree in Tree::ALL {
            let (lo, hi) = (VertexId::corner(tree.prev()), VertexId::corner(tree.next()));
            let mut wall: HashSet<(VertexId, VertexId)> = HashSet::new();
            let mut add = |a: VertexId, b: VertexId| {
                wall.insert((a.min(b), a.max(b)));
            };
            for side in [tree.prev(), tree.next()] {
                for pair in r.path_to_root(v, side).windows(2) {
                    add(pair[0], pair[1]);
                }
            }
            add(lo, hi);

            // seed: the inner face on the outer edge A_{i-1} A_{i+1}
            let d = t.dart(lo, hi).unwrap();
            let seed = if t.face_of(d) == t.outer_face() {
                t.face_of(t.twin(d))
            } else {
                t.face_of(d)
            };
            let mut seen = vec![false; t.face_count()];
            seen[seed] = true;
            let mut stack = vec![seed];
            let mut count = 0i64;
            while let Some(f) = stack.pop() {
                count += 1;
                let d0 = face_dart(t, f);
                let mut d = d0;
                loop {
                    let (a, b) = (t.tail(d), t.head(d));
                    let g = t.face_of(t.twin(d));
                    if !wall.contains(&(a.min(b), a.max(b))) && g != t.outer_face() && !seen[g] {
                        seen[g] = true;
                        stack.push(g);
                    }
                    d = t.face_next(d);
                    if d == d0 {
                        break;
                    }
                }
            }
            out[v.index()][tree.index()] = count;
        }
    }
    out
}

fn face_dart(t: &Triangulation, f: usize) -> usize {
    let [a, b, _] = t.faces()[f];
    t.dart(a, b).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::fixtures::{k4, t5};
    use crate::planar::{generate_stacked, randomize_flips};
    use crate::schnyder::compute_realizer;

    #[test]
    fn k4_counts() {
        let t = k4();
        let r = compute_realizer(&t).unwrap();
        for counts in [region_counts(&t, &r), region_counts_oracle(&t, &r)] {
            assert_eq!(counts[3], [1, 1, 1]);
            assert_eq!(counts[0], [3, 0, 0]);
        }
    }

    #[test]
    fn t5_counts() {
        let t = t5();
        let r = compute_realizer(&t).unwrap();
        let oracle = region_counts_oracle(&t, &r);
        assert_eq!(oracle[3], [1, 1, 3]);
        assert_eq!(oracle[4], [2, 2, 1]);
        assert_eq!(oracle[0], [5, 0, 0]);
        assert_eq!(region_counts(&t, &r), oracle);
    }

    #[test]
    fn formula_matches_oracle_on_random_instances() {
        for seed in 0..20 {
            let t = randomize_flips(&generate_stacked(30, seed).unwrap(), 300, seed);
            let r = compute_realizer(&t).unwrap();
            assert_eq!(
                region_counts(&t, &r),
                region_counts_oracle(&t, &r),
                "seed {seed}"
            );
        }
    }
}
