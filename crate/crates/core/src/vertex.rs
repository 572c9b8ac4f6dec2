use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Index of a vertex in a triangulation.
///
/// `A1`, `A2` and `A3` (indices 0, 1, 2) are the outer corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    pub const A1: VertexId = VertexId(0);
    pub const A2: VertexId = VertexId(1);
    pub const A3: VertexId = VertexId(2);

    #[inline]
    pub fn new(index: usize) -> Self {
        VertexId(u32::try_from(index).expect("vertex index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_corner(self) -> bool {
        self.0 < 3
    }

    /// The outer corner `A_i` rooting tree `T_i`.
    pub fn corner(tree: Tree) -> Self {
        VertexId(tree.index() as u32)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("A1"),
            1 => f.write_str("A2"),
            2 => f.write_str("A3"),
            i => write!(f, "{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid vertex id `{0}` (expected A1, A2, A3 or a non-negative index)")]
pub struct ParseVertexError(String);

impl FromStr for VertexId {
    type Err = ParseVertexError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A1" | "a1" => Ok(VertexId::A1),
            "A2" | "a2" => Ok(VertexId::A2),
            "A3" | "a3" => Ok(VertexId::A3),
            other => other
                .parse::<u32>()
                .map(VertexId)
                .map_err(|_| ParseVertexError(s.to_string())),
        }
    }
}

/// One of the three trees of a realizer. `T_i` is rooted at corner `A_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tree {
    T1,
    T2,
    T3,
}

impl Tree {
    pub const ALL: [Tree; 3] = [Tree::T1, Tree::T2, Tree::T3];

    /// Zero-based index: `T1 -> 0`.
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Tree {
        Tree::ALL[i % 3]
    }

    /// `T_{i+1}`, cyclically.
    #[inline]
    pub fn next(self) -> Tree {
        Tree::from_index(self.index() + 1)
    }

    /// `T_{i-1}`, cyclically.
    #[inline]
    pub fn prev(self) -> Tree {
        Tree::from_index(self.index() + 2)
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.index() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_names_round_trip() {
        for s in ["A1", "A2", "A3", "7"] {
            let v: VertexId = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("2".parse::<VertexId>().unwrap(), VertexId::A3);
        assert!("x".parse::<VertexId>().is_err());
    }

    #[test]
    fn tree_cycles() {
        assert_eq!(Tree::T3.next(), Tree::T1);
        assert_eq!(Tree::T1.prev(), Tree::T3);
        assert_eq!(VertexId::corner(Tree::T2), VertexId::A2);
    }
}
