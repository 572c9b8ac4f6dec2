//! Schnyder woods, exact Schnyder drawings and sector-based greedy routing on
//! planar triangulations.
//!
//! The crate is organised bottom-up:
//!
//! * [`planar`]: triangulations stored as rotation systems with a half-edge
//!   index, plus generators and the `.tri` text format.
//! * [`schnyder`]: realizer (Schnyder wood) computation, face-count region
//!   sizes, the barycentric drawing and exact geometric validators.
//! * [`vrac`]: the three order relations induced by the drawing, the six
//!   sectors around a vertex and extraction of the saturated graph.
//! * [`routing`]: sector greedy and Euclidean greedy forwarding, route
//!   tracing and exhaustive all-pairs delivery checks.
//!
//! Vertices `0`, `1`, `2` are always the outer corners `A1`, `A2`, `A3`.

pub mod planar;
pub mod report;
pub mod routing;
pub mod schnyder;
mod vertex;
pub mod vrac;

pub use planar::{Triangulation, TriangulationError};
pub use report::{ValidationReport, Violation};
pub use schnyder::{Drawing, Realizer};
pub use vertex::{Tree, VertexId};
pub use vrac::SaturatedGraph;
