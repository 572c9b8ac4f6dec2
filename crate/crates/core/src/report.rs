//! Validation reports shared by every checker in the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::VertexId;

/// One failed invariant (or, in `notes`, one informational finding).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Short machine-readable tag, e.g. `"face-size"` or `"wedge"`.
    pub kind: String,
    /// Offending vertices, in an order meaningful for `kind`.
    pub vertices: Vec<VertexId>,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: &str, vertices: Vec<VertexId>, detail: impl Into<String>) -> Self {
        Violation {
            kind: kind.to_string(),
            vertices,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.kind, self.detail)
    }
}

/// Result of a validator. An empty `violations` list means the check passed;
/// `notes` carries findings that are logged but are not failures.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub check: String,
    pub violations: Vec<Violation>,
    pub notes: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(check: &str) -> Self {
        ValidationReport {
            check: check.to_string(),
            ..Default::default()
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn note(&mut self, v: Violation) {
        self.notes.push(v);
    }

    /// Sorts violations and notes so reports are independent of evaluation order.
    pub fn canonicalize(&mut self) {
        let key = |v: &Violation| (v.vertices.clone(), v.kind.clone(), v.detail.clone());
        self.violations.sort_by_key(key);
        self.notes.sort_by_key(key);
    }

    pub fn first_violation_with(&self, kind: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.kind == kind)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "{}: ok", self.check)?;
        } else {
            write!(f, "{}: {} violation(s)", self.check, self.violations.len())?;
        }
        if !self.notes.is_empty() {
            write!(f, " ({} note(s))", self.notes.len())?;
        }
        Ok(())
    }
}
