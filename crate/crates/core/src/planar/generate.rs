//! Seeded instance generators: stacking plus random edge flips.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Triangulation, TriangulationError};
use crate::VertexId;

// Separate ChaCha streams so that flipping never replays the stacking draws.
const STACK_STREAM: u64 = 1;
const FLIP_STREAM: u64 = 2;

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn position(list: &[VertexId], v: VertexId) -> usize {
    list.iter()
        .position(|&w| w == v)
        .expect("rotation lists are symmetric")
}

fn insert_after(list: &mut Vec<VertexId>, anchor: VertexId, v: VertexId) {
    let i = position(list, anchor);
    list.insert(i + 1, v);
}

/// Stacked (Apollonian) triangulation on `n` vertices: starting from the
/// outer triangle, repeatedly insert a vertex into a uniformly chosen inner
/// face and join it to the face's corners.
pub fn generate_stacked(n: usize, seed: u64) -> Result<Triangulation, TriangulationError> {
    if n < 4 {
        return Err(TriangulationError::GeneratorTooSmall(n));
    }
    let (a1, a2, a3) = (VertexId::A1, VertexId::A2, VertexId::A3);
    let mut rot: Vec<Vec<VertexId>> = vec![vec![a2, a3], vec![a3, a1], vec![a1, a2]];
    // counterclockwise inner faces
    let mut faces: Vec<[VertexId; 3]> = vec![[a1, a2, a3]];
    let mut rng = rng(seed, STACK_STREAM);

    for x in 3..n {
        let x = VertexId::new(x);
        let fi = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[fi];
        insert_after(&mut rot[a.index()], b, x);
        insert_after(&mut rot[b.index()], c, x);
        insert_after(&mut rot[c.index()], a, x);
        rot.push(vec![a, b, c]);
        faces[fi] = [a, b, x];
        faces.push([b, c, x]);
        faces.push([c, a, x]);
    }
    Triangulation::new(rot)
}

/// Performs `k` random flip attempts on internal edges. A flip of `ab`
/// (with opposite vertices `c`, `d`) is skipped when `cd` already exists;
/// edges of the outer triangle are never chosen.
pub fn randomize_flips(t: &Triangulation, k: usize, seed: u64) -> Triangulation {
    let mut rot = t.rotation().to_vec();
    let mut edges: Vec<(VertexId, VertexId)> = t
        .edges()
        .into_iter()
        .filter(|&(u, v)| !(u.is_corner() && v.is_corner()))
        .collect();
    if edges.is_empty() {
        return t.clone();
    }
    let mut rng = rng(seed, FLIP_STREAM);
    let pred = |list: &[VertexId], v: VertexId| {
        let i = position(list, v);
        list[(i + list.len() - 1) % list.len()]
    };

    for _ in 0..k {
        let ei = rng.gen_range(0..edges.len());
        let (a, b) = edges[ei];
        // faces a->b->c and b->a->d
        let c = pred(&rot[b.index()], a);
        let d = pred(&rot[a.index()], b);
        if c == d || rot[c.index()].contains(&d) {
            continue;
        }
        let ia = position(&rot[a.index()], b);
        rot[a.index()].remove(ia);
        let ib = position(&rot[b.index()], a);
        rot[b.index()].remove(ib);
        insert_after(&mut rot[c.index()], a, d);
        insert_after(&mut rot[d.index()], b, c);
        edges[ei] = (c.min(d), c.max(d));
    }
    Triangulation::new(rot).expect("edge flips preserve triangulations")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::fixtures;

    #[test]
    fn four_vertices_give_k4() {
        for seed in 0..5 {
            assert_eq!(generate_stacked(4, seed).unwrap(), fixtures::k4());
        }
    }

    #[test]
    fn five_vertices_give_one_of_three_stackings() {
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..64 {
            let t = generate_stacked(5, seed).unwrap();
            assert!(t.validate().is_valid());
            seen.insert(t.rotation().to_vec());
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn euler_counts_at_200() {
        let t = generate_stacked(200, 7).unwrap();
        assert_eq!(t.edge_count(), 594);
        assert_eq!(t.face_count(), 396);
    }

    #[test]
    fn too_small() {
        assert_eq!(
            generate_stacked(3, 0).unwrap_err(),
            TriangulationError::GeneratorTooSmall(3)
        );
    }

    #[test]
    fn k4_has_no_legal_flip() {
        let k4 = fixtures::k4();
        assert_eq!(randomize_flips(&k4, 10, 3), k4);
    }

    #[test]
    fn flipped_t5_stays_valid() {
        for seed in 0..10 {
            let t = randomize_flips(&fixtures::t5(), 1, seed);
            assert!(t.validate().is_valid());
            assert_eq!(t.n(), 5);
        }
    }

    #[test]
    fn flips_leave_the_stacked_class() {
        let base = generate_stacked(50, 11).unwrap();
        let t = randomize_flips(&base, 500, 11);
        assert!(t.validate().is_valid());
        assert_ne!(t, base);
        assert_eq!(t.edge_count(), 3 * 50 - 6);
    }

    #[test]
    fn generators_are_deterministic() {
        let a = randomize_flips(&generate_stacked(80, 5).unwrap(), 300, 5);
        let b = randomize_flips(&generate_stacked(80, 5).unwrap(), 300, 5);
        assert_eq!(a, b);
    }
}
