//! Order relations, sectors and the saturated graph of a drawing.
//!
//! Coordinate `i` of a vertex orders the vertices by their distance to the
//! side opposite `A_i`: `u <_i v` iff `u_i < v_i`. The sign triple of `v - u`
//! places `v` in one of six sectors around `u`. The three odd sectors are the
//! ones where exactly one order increases; keeping the least edge of every
//! odd sector gives the saturated graph.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::planar::Triangulation;
use crate::report::{ValidationReport, Violation};
use crate::schnyder::{Drawing, Realizer};
use crate::{Tree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VracError {
    #[error("vertices {0} and {1} have identical coordinates")]
    IdenticalCoordinates(VertexId, VertexId),
    #[error("{u} has no neighbour in sector {sector}")]
    EmptySector { u: VertexId, sector: Sector },
    #[error("neighbours {candidates:?} of {u} in sector {sector} have no least element")]
    NoUniqueMinimum {
        u: VertexId,
        sector: Sector,
        candidates: Vec<VertexId>,
    },
    #[error(".sat line {line}: {message}")]
    Format { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: i64) -> Sign {
        match x.signum() {
            -1 => Sign::Neg,
            0 => Sign::Zero,
            _ => Sign::Pos,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Neg => "-",
            Sign::Zero => "0",
            Sign::Pos => "+",
        })
    }
}

/// Componentwise sign of `v - u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignTriple(pub [Sign; 3]);

impl SignTriple {
    pub fn negate(self) -> SignTriple {
        SignTriple(self.0.map(Sign::negate))
    }

    pub fn count(self, s: Sign) -> usize {
        self.0.iter().filter(|&&x| x == s).count()
    }

    /// Position of the only entry equal to `s`, if there is exactly one.
    pub fn unique(self, s: Sign) -> Option<usize> {
        (self.count(s) == 1).then(|| self.0.iter().position(|&x| x == s).unwrap())
    }
}

impl fmt::Display for SignTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Signs of `v - u` for two coordinate rows.
pub fn sign_triple(u: [i64; 3], v: [i64; 3]) -> Option<SignTriple> {
    (u != v).then(|| SignTriple([0, 1, 2].map(|k| Sign::of(v[k] - u[k]))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sector {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
}

impl Sector {
    pub const ALL: [Sector; 6] = [
        Sector::S1,
        Sector::S2,
        Sector::S3,
        Sector::S4,
        Sector::S5,
        Sector::S6,
    ];

    /// 1-based sector number.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn from_number(j: usize) -> Sector {
        Sector::ALL[(j + 5) % 6]
    }

    pub fn is_odd(self) -> bool {
        self.number() % 2 == 1
    }

    /// `s1, s3, s5` belong to `T1, T2, T3`.
    pub fn odd_tree(self) -> Option<Tree> {
        self.is_odd().then(|| Tree::from_index(self.number() / 2))
    }

    pub fn odd_of(tree: Tree) -> Sector {
        Sector::from_number(2 * tree.index() + 1)
    }

    pub fn opposite(self) -> Sector {
        Sector::from_number(self.number() + 3)
    }

    /// The two odd sectors bordering an even one, lower tree first.
    pub fn neighbours(self) -> (Sector, Sector) {
        let (a, b) = (
            Sector::from_number(self.number() - 1),
            Sector::from_number(self.number() + 1),
        );
        if a < b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.number())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectorId {
    pub sector: Sector,
    /// set when a zero sign was resolved to the adjacent odd sector
    pub boundary: bool,
}

impl fmt::Display for SectorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sector)?;
        if self.boundary {
            f.write_str("*")?;
        }
        Ok(())
    }
}

/// Sector of a sign triple. One-zero patterns go to the odd sector of the
/// single positive entry.
pub fn sector_of(s: SignTriple) -> SectorId {
    use Sign::*;
    let strict = |sector| SectorId {
        sector,
        boundary: false,
    };
    match s.0 {
        [Pos, Neg, Neg] => strict(Sector::S1),
        [Pos, Pos, Neg] => strict(Sector::S2),
        [Neg, Pos, Neg] => strict(Sector::S3),
        [Neg, Pos, Pos] => strict(Sector::S4),
        [Neg, Neg, Pos] => strict(Sector::S5),
        [Pos, Neg, Pos] => strict(Sector::S6),
        _ => {
            let i = s
                .unique(Pos)
                .expect("difference of two distinct rows with equal sums");
            SectorId {
                sector: Sector::odd_of(Tree::from_index(i)),
                boundary: true,
            }
        }
    }
}

/// Sector of `t` around `u`.
pub fn classify_sector(u: [i64; 3], t: [i64; 3]) -> Option<SectorId> {
    sign_triple(u, t).map(sector_of)
}

fn classify(d: &Drawing, u: VertexId, t: VertexId) -> Result<SectorId, VracError> {
    classify_sector(d.coord(u), d.coord(t)).ok_or(VracError::IdenticalCoordinates(u, t))
}

/// `a` precedes `b` in the order of odd sector `tree`: no further from `u`
/// along coordinate `tree`, no closer along the other two.
pub fn sector_le(tree: Tree, a: [i64; 3], b: [i64; 3]) -> bool {
    let i = tree.index();
    (0..3).all(|k| if k == i { a[k] <= b[k] } else { a[k] >= b[k] })
}

/// The element preceding all others in the order of odd sector `tree`.
pub fn least_in_sector(tree: Tree, cands: &[(VertexId, [i64; 3])]) -> Option<VertexId> {
    cands
        .iter()
        .find(|(_, m)| cands.iter().all(|(_, w)| sector_le(tree, *m, *w)))
        .map(|&(v, _)| v)
}

/// One retained edge per odd sector of every inner vertex, indexed by tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturatedGraph {
    sat: Vec<[Option<VertexId>; 3]>,
}

impl SaturatedGraph {
    pub fn new(sat: Vec<[Option<VertexId>; 3]>) -> Self {
        SaturatedGraph { sat }
    }

    pub fn n(&self) -> usize {
        self.sat.len()
    }

    pub fn get(&self, u: VertexId, tree: Tree) -> Option<VertexId> {
        self.sat[u.index()][tree.index()]
    }

    pub fn entries(&self, u: VertexId) -> [Option<VertexId>; 3] {
        self.sat[u.index()]
    }

    pub fn set(&mut self, u: VertexId, tree: Tree, v: Option<VertexId>) {
        self.sat[u.index()][tree.index()] = v;
    }

    pub fn table(&self) -> &[[Option<VertexId>; 3]] {
        &self.sat
    }
}

/// Keeps, for every inner vertex and odd sector, the least neighbour of that
/// sector.
pub fn extract_saturated(t: &Triangulation, d: &Drawing) -> Result<SaturatedGraph, VracError> {
    let mut sat = vec![[None; 3]; t.n()];
    for u in t.internal_vertices() {
        let mut buckets: [Vec<VertexId>; 3] = Default::default();
        for &w in t.neighbors(u) {
            if let Some(tree) = classify(d, u, w)?.sector.odd_tree() {
                buckets[tree.index()].push(w);
            }
        }
        for tree in Tree::ALL {
            let cands = &buckets[tree.index()];
            let sector = Sector::odd_of(tree);
            if cands.is_empty() {
                return Err(VracError::EmptySector { u, sector });
            }
            let rows: Vec<(VertexId, [i64; 3])> = cands.iter().map(|&w| (w, d.coord(w))).collect();
            match least_in_sector(tree, &rows) {
                Some(m) => sat[u.index()][tree.index()] = Some(m),
                None => {
                    return Err(VracError::NoUniqueMinimum {
                        u,
                        sector,
                        candidates: cands.clone(),
                    })
                }
            }
        }
    }
    Ok(SaturatedGraph { sat })
}

/// Every inner vertex keeps exactly one edge per odd sector, each a real edge
/// of `t` lying in its sector; corners keep nothing.
pub fn check_saturated(t: &Triangulation, d: &Drawing, sg: &SaturatedGraph) -> ValidationReport {
    let mut report = ValidationReport::new("saturated");
    if sg.n() != t.n() {
        report.push(Violation::new(
            "size",
            vec![],
            format!("{} entries for {} vertices", sg.n(), t.n()),
        ));
        return report;
    }
    for u in t.vertices() {
        for tree in Tree::ALL {
            let sector = Sector::odd_of(tree);
            match (u.is_corner(), sg.get(u, tree)) {
                (true, None) => {}
                (true, Some(v)) => report.push(Violation::new(
                    "corner-entry",
                    vec![u, v],
                    format!("corner {u} keeps an edge to {v} in {sector}"),
                )),
                (false, None) => report.push(Violation::new(
                    "missing",
                    vec![u],
                    format!("{u} has no retained edge in {sector}"),
                )),
                (false, Some(v)) if !t.is_adjacent(u, v) => report.push(Violation::new(
                    "not-an-edge",
                    vec![u, v],
                    format!("{u}-{v} in {sector} is not an edge"),
                )),
                (false, Some(v)) => match classify_sector(d.coord(u), d.coord(v)) {
                    Some(id) if id.sector == sector => {}
                    other => report.push(Violation::new(
                        "wrong-sector",
                        vec![u, v],
                        format!(
                            "{u}->{v} kept for {sector} lies in {}",
                            other.map_or("no sector".into(), |s| s.to_string())
                        ),
                    )),
                },
            }
        }
    }
    report
}

/// Entry where the saturated graph and the realizer disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatMismatch {
    pub vertex: VertexId,
    pub tree: Tree,
    pub saturated: Option<VertexId>,
    pub parent: Option<VertexId>,
}

/// `sat(u, k)` against the `T_k` parent of every inner vertex. Empty means equal.
pub fn saturated_equals_realizer(sg: &SaturatedGraph, r: &Realizer) -> Vec<SatMismatch> {
    let mut diff = Vec::new();
    for u in (3..sg.n().max(r.n())).map(VertexId::new) {
        for tree in Tree::ALL {
            let saturated = (u.index() < sg.n()).then(|| sg.get(u, tree)).flatten();
            let parent = (u.index() < r.n()).then(|| r.parent(u, tree)).flatten();
            if saturated != parent {
                diff.push(SatMismatch {
                    vertex: u,
                    tree,
                    saturated,
                    parent,
                });
            }
        }
    }
    diff
}

/// Edge classifications that needed the zero-sign rule, as `(u, w, sector)`
/// for every ordered adjacent pair.
pub fn boundary_classifications(
    t: &Triangulation,
    d: &Drawing,
) -> Vec<(VertexId, VertexId, SectorId)> {
    let mut out = Vec::new();
    for u in t.vertices() {
        for &w in t.neighbors(u) {
            if let Some(id) = classify_sector(d.coord(u), d.coord(w)) {
                if id.boundary {
                    out.push((u, w, id));
                }
            }
        }
    }
    out.sort_by_key(|&(u, w, _)| (u, w));
    out
}

/// `.sat` text: one line `u sat1 sat2 sat3` per inner vertex.
pub fn format_sat(sg: &SaturatedGraph) -> String {
    let mut out = String::new();
    for (u, row) in sg.sat.iter().enumerate().skip(3) {
        let cell = |v: Option<VertexId>| v.map_or("-".to_string(), |v| v.to_string());
        out.push_str(&format!(
            "{} {} {} {}\n",
            u,
            cell(row[0]),
            cell(row[1]),
            cell(row[2])
        ));
    }
    out
}

pub fn parse_sat(text: &str, n: usize) -> Result<SaturatedGraph, VracError> {
    let mut sat = vec![[None; 3]; n];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| VracError::Format {
            line: i + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(err(format!("expected 4 fields, got {}", fields.len())));
        }
        let parse = |s: &str| -> Result<Option<VertexId>, VracError> {
            if s == "-" {
                return Ok(None);
            }
            let v: VertexId = s.parse().map_err(|e| err(format!("{e}")))?;
            if v.index() >= n {
                return Err(err(format!("vertex {v} out of range")));
            }
            Ok(Some(v))
        };
        let u = parse(fields[0])?.ok_or_else(|| err("missing vertex".into()))?;
        for k in 0..3 {
            sat[u.index()][k] = parse(fields[k + 1])?;
        }
    }
    Ok(SaturatedGraph { sat })
}
