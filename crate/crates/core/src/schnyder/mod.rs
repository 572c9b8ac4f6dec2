//! Schnyder woods and the Schnyder drawing.

mod drawing;
mod geometry;
mod realizer;
mod regions;

use thiserror::Error;

pub use drawing::{
    compute_drawing, format_bary, orientation, parse_bary, segments_intersect, validate_drawing,
    validate_planarity, CartesianPlacement, Drawing,
};
pub use geometry::{
    strictly_inside_enclosing, validate_enclosing_triangle, validate_three_wedge, wedge_of,
};
pub use realizer::{compute_realizer, validate_realizer, Incidence, Realizer};
pub use regions::{region_counts, region_counts_oracle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchnyderError {
    #[error("triangulation with {0} vertices has no inner vertex")]
    NoInnerVertex(usize),
    #[error("no contractible neighbour of A1 at step {step} ({remaining} inner vertices left); input is not a triangulation")]
    NotContractible { step: usize, remaining: usize },
    #[error(".bary line {line}: {message}")]
    Format { line: usize, message: String },
}
