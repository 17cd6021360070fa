//! Knot Floer homology over F2[U,V] and Heegaard Floer homology of integer
//! surgeries.
//!
//! The layers, bottom to top:
//!
//! - [`algebra`]: bigraded complexes over F2[U,V] and graded complexes over
//!   F2[W]; elimination with homotopy witnesses; homology over the power
//!   series ring F2[[W]] with certified truncation.
//! - [`knots`]: knot complexes from Alexander polynomial data (L-space
//!   knots, thin knots), connected sums, mirrors, and the invariants read
//!   off them.
//! - [`one_one`]: genus-1 doubly pointed Heegaard diagrams: generators,
//!   holomorphic disks counted as embedded bigons in the universal cover of
//!   the torus, and the resulting knot complex.
//! - [`surgery`]: Heegaard Floer homology of integer surgery along a knot,
//!   by large-surgery truncation and by the mapping cone, with d-invariant
//!   data and L-space detection.
//! - [`h1`]: first homology of surgered manifolds via Smith normal form.

pub mod algebra;
pub mod error;
pub mod h1;
pub mod knots;
pub mod one_one;
pub mod surgery;

pub use error::{Error, Result};
