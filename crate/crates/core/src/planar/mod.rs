//! Embedded planar triangulations.
//!
//! A triangulation is given by its rotation system: for every vertex the
//! counterclockwise cyclic list of its neighbours. Vertices 0, 1, 2 are the
//! outer corners `A1`, `A2`, `A3`, which appear counterclockwise in the plane
//! (`A1` on top, `A2` bottom left, `A3` bottom right).
//!
//! Faces are traced with the face on the left of each dart: the successor of
//! the dart `u -> v` is `v -> w`, where `w` precedes `u` in the rotation of
//! `v`. Inner faces therefore come out counterclockwise and the outer face is
//! traversed as `A1 -> A3 -> A2`.

mod generate;
mod io;

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::report::{ValidationReport, Violation};
use crate::VertexId;

pub use generate::{generate_stacked, randomize_flips};
pub use io::{format_tri, parse_tri, read_tri, write_tri, TriFormatError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("a triangulation needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("inconsistent rotation: {0}")]
    InconsistentRotation(String),
    #[error("not a simple graph: {0}")]
    NotSimple(String),
    #[error("face {face:?} has {} vertices, every face must be a triangle", face.len())]
    NotTriangulated { face: Vec<VertexId> },
    #[error("expected 3n-6 = {expected} edges, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("missing outer face: {0}")]
    MissingOuterFace(String),
    #[error("graph is not connected: vertex {0} is unreachable from A1")]
    Disconnected(VertexId),
    #[error("generator needs n >= 4, got {0}")]
    GeneratorTooSmall(usize),
}

impl TriangulationError {
    fn kind(&self) -> &'static str {
        match self {
            TriangulationError::TooFewVertices(_) => "too-few-vertices",
            TriangulationError::InconsistentRotation(_) => "inconsistent-rotation",
            TriangulationError::NotSimple(_) => "not-simple",
            TriangulationError::NotTriangulated { .. } => "face-size",
            TriangulationError::WrongEdgeCount { .. } => "edge-count",
            TriangulationError::MissingOuterFace(_) => "outer-face",
            TriangulationError::Disconnected(_) => "disconnected",
            TriangulationError::GeneratorTooSmall(_) => "generator",
        }
    }

    fn vertices(&self) -> Vec<VertexId> {
        match self {
            TriangulationError::NotTriangulated { face } => face.clone(),
            TriangulationError::Disconnected(v) => vec![*v],
            _ => Vec::new(),
        }
    }

    fn to_violation(&self) -> Violation {
        Violation::new(self.kind(), self.vertices(), self.to_string())
    }
}

/// Dart tables derived from a consistent rotation system.
struct Darts {
    first: Vec<usize>,
    head: Vec<VertexId>,
    tail: Vec<VertexId>,
    twin: Vec<usize>,
    next: Vec<usize>,
}

impl Darts {
    /// Requires every list entry to be in range and the lists to be symmetric.
    fn build(rotation: &[Vec<VertexId>]) -> Darts {
        let mut first = Vec::with_capacity(rotation.len() + 1);
        let mut head = Vec::new();
        let mut tail = Vec::new();
        let mut index = HashMap::new();
        for (u, list) in rotation.iter().enumerate() {
            first.push(head.len());
            for &v in list {
                index.insert((u as u32, v.0), head.len());
                tail.push(VertexId::new(u));
                head.push(v);
            }
        }
        first.push(head.len());

        let twin: Vec<usize> = (0..head.len())
            .map(|d| index[&(head[d].0, tail[d].0)])
            .collect();
        // next(u -> v) = v -> pred_v(u)
        let next = (0..head.len())
            .map(|d| {
                let back = twin[d];
                let v = head[d].index();
                let deg = first[v + 1] - first[v];
                let pos = back - first[v];
                first[v] + (pos + deg - 1) % deg
            })
            .collect();
        Darts {
            first,
            head,
            tail,
            twin,
            next,
        }
    }

    /// Traces every face; returns the vertex cycle per face and the face of each dart.
    fn faces(&self) -> (Vec<Vec<VertexId>>, Vec<usize>) {
        let mut face_of = vec![usize::MAX; self.head.len()];
        let mut faces = Vec::new();
        for start in 0..self.head.len() {
            if face_of[start] != usize::MAX {
                continue;
            }
            let f = faces.len();
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = f;
                cycle.push(self.tail[d]);
                d = self.next[d];
                if d == start {
                    break;
                }
            }
            faces.push(cycle);
        }
        (faces, face_of)
    }
}

/// Runs every structural check, in dependency order. Checks that need a
/// consistent rotation are skipped when the rotation is inconsistent.
fn check_rotation(rotation: &[Vec<VertexId>]) -> Vec<TriangulationError> {
    let n = rotation.len();
    if n < 3 {
        return vec![TriangulationError::TooFewVertices(n)];
    }
    let mut problems = Vec::new();
    for (u, list) in rotation.iter().enumerate() {
        let mut seen = std::collections::HashSet::new();
        for &v in list {
            if v.index() >= n {
                problems.push(TriangulationError::InconsistentRotation(format!(
                    "vertex {} lists out-of-range neighbour {}",
                    VertexId::new(u),
                    v.0
                )));
            } else if v.index() == u {
                problems.push(TriangulationError::NotSimple(format!(
                    "loop at vertex {}",
                    VertexId::new(u)
                )));
            } else if !seen.insert(v) {
                problems.push(TriangulationError::NotSimple(format!(
                    "parallel edges between {} and {}",
                    VertexId::new(u),
                    v
                )));
            } else if !rotation[v.index()].contains(&VertexId::new(u)) {
                problems.push(TriangulationError::InconsistentRotation(format!(
                    "{} lists {} but not vice versa",
                    VertexId::new(u),
                    v
                )));
            }
        }
    }
    if !problems.is_empty() {
        return problems;
    }
    if let Some(u) = rotation.iter().position(|l| l.is_empty()) {
        return vec![TriangulationError::Disconnected(VertexId::new(u))];
    }

    let darts = Darts::build(rotation);
    let (faces, face_of) = darts.faces();
    for face in &faces {
        if face.len() != 3 {
            problems.push(TriangulationError::NotTriangulated { face: face.clone() });
        }
    }
    let edges = darts.head.len() / 2;
    if edges != 3 * n - 6 {
        problems.push(TriangulationError::WrongEdgeCount {
            expected: 3 * n - 6,
            found: edges,
        });
    }

    let a1 = &rotation[0];
    if !a1.contains(&VertexId::A2)
        || !a1.contains(&VertexId::A3)
        || !rotation[1].contains(&VertexId::A3)
    {
        problems.push(TriangulationError::MissingOuterFace(
            "A1, A2, A3 are not pairwise adjacent".into(),
        ));
    } else {
        let d = darts.first[0] + a1.iter().position(|&v| v == VertexId::A3).unwrap();
        let outer = &faces[face_of[d]];
        if outer.as_slice() != [VertexId::A1, VertexId::A3, VertexId::A2] {
            let d12 = darts.first[0] + a1.iter().position(|&v| v == VertexId::A2).unwrap();
            let mirrored =
                faces[face_of[d12]].as_slice() == [VertexId::A1, VertexId::A2, VertexId::A3];
            problems.push(TriangulationError::MissingOuterFace(if mirrored {
                "(A1, A2, A3) bounds a face but the embedding is mirrored; rotations must be counterclockwise with A1, A2, A3 counterclockwise".into()
            } else {
                "(A1, A2, A3) does not bound a face".into()
            }));
        }
    }

    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for v in &rotation[u] {
            if !seen[v.index()] {
                seen[v.index()] = true;
                queue.push_back(v.index());
            }
        }
    }
    if let Some(u) = seen.iter().position(|s| !s) {
        problems.push(TriangulationError::Disconnected(VertexId::new(u)));
    }
    problems
}

/// Checks a raw rotation system and lists every failed invariant.
pub fn validate_rotation(rotation: &[Vec<VertexId>]) -> ValidationReport {
    let mut report = ValidationReport::new("triangulation");
    for p in check_rotation(rotation) {
        report.push(p.to_violation());
    }
    report
}

/// An embedded planar triangulation with a designated outer face `(A1, A2, A3)`.
///
/// Immutable once built; all dart and face tables are derived at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    rotation: Vec<Vec<VertexId>>,
    first_dart: Vec<usize>,
    head: Vec<VertexId>,
    tail: Vec<VertexId>,
    twin: Vec<usize>,
    next: Vec<usize>,
    dart_face: Vec<usize>,
    faces: Vec<[VertexId; 3]>,
    outer_face: usize,
}

impl Triangulation {
    /// Builds and validates a triangulation from counterclockwise rotations.
    pub fn new(rotation: Vec<Vec<VertexId>>) -> Result<Self, TriangulationError> {
        if let Some(p) = check_rotation(&rotation).into_iter().next() {
            return Err(p);
        }
        let darts = Darts::build(&rotation);
        let (cycles, dart_face) = darts.faces();
        let faces: Vec<[VertexId; 3]> = cycles.iter().map(|c| [c[0], c[1], c[2]]).collect();
        let d13 = darts.first[0] + rotation[0].iter().position(|&v| v == VertexId::A3).unwrap();
        let outer_face = dart_face[d13];
        Ok(Triangulation {
            rotation,
            first_dart: darts.first,
            head: darts.head,
            tail: darts.tail,
            twin: darts.twin,
            next: darts.next,
            dart_face,
            faces,
            outer_face,
        })
    }

    /// Convenience constructor from plain indices.
    pub fn from_indices(rotation: &[Vec<usize>]) -> Result<Self, TriangulationError> {
        Self::new(
            rotation
                .iter()
                .map(|l| l.iter().map(|&v| VertexId::new(v)).collect())
                .collect(),
        )
    }

    /// Re-runs the structural checks on this triangulation's rotation.
    pub fn validate(&self) -> ValidationReport {
        validate_rotation(&self.rotation)
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn rotation(&self) -> &[Vec<VertexId>] {
        &self.rotation
    }

    pub fn into_rotation(self) -> Vec<Vec<VertexId>> {
        self.rotation
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n()).map(VertexId::new)
    }

    /// Every vertex except the three corners.
    pub fn internal_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (3..self.n()).map(VertexId::new)
    }

    /// Neighbours of `v` in counterclockwise order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v.index()].len()
    }

    pub fn is_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.rotation[u.index()].contains(&v)
    }

    pub fn edge_count(&self) -> usize {
        self.head.len() / 2
    }

    /// Undirected edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = (0..self.head.len())
            .filter(|&d| self.tail[d] < self.head[d])
            .map(|d| (self.tail[d], self.head[d]))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn dart_count(&self) -> usize {
        self.head.len()
    }

    /// The dart `u -> v`, if the edge exists.
    pub fn dart(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.rotation[u.index()]
            .iter()
            .position(|&w| w == v)
            .map(|i| self.first_dart[u.index()] + i)
    }

    /// Darts leaving `v`, in counterclockwise order.
    pub fn darts_from(&self, v: VertexId) -> std::ops::Range<usize> {
        self.first_dart[v.index()]..self.first_dart[v.index() + 1]
    }

    pub fn head(&self, d: usize) -> VertexId {
        self.head[d]
    }

    pub fn tail(&self, d: usize) -> VertexId {
        self.tail[d]
    }

    pub fn twin(&self, d: usize) -> usize {
        self.twin[d]
    }

    /// Next dart along the face on the left of `d`.
    pub fn face_next(&self, d: usize) -> usize {
        self.next[d]
    }

    /// Face on the left of dart `d`.
    pub fn face_of(&self, d: usize) -> usize {
        self.dart_face[d]
    }

    /// All faces, each as a vertex triple in traversal order. Inner faces are
    /// counterclockwise.
    pub fn faces(&self) -> &[[VertexId; 3]] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    /// Number of bounded faces, `2n - 5`.
    pub fn internal_face_count(&self) -> usize {
        self.faces.len() - 1
    }
}
