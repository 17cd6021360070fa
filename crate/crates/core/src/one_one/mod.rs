//! Knot complexes from genus-1 doubly pointed Heegaard diagrams.
//!
//! The torus is R²/Z² with the alpha curve the image of the horizontal line
//! y = 0. The beta curve is described by one period of a lift: a polygonal
//! path that ends at its starting point plus a translation (m, ±1). All
//! coordinates are exact rationals, so intersection, winding, and turning
//! computations are exact.

mod bigons;
mod cfk;
mod geometry;

pub use cfk::{
    algebraic_intersection_number, cfk_from_diagram, count_bigons, enumerate_generators,
    validate_diagram, BigonCount, DiagramReport, OneOneDiagram,
};
pub use geometry::Rat;
