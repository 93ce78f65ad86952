//! Exact computations around commutative O(2)-cocycles on the two-sphere,
//! the commuting-tuple chain complex of SO(3), mod-2 characteristic classes,
//! and ring presentations for the real K-theory of closed surfaces.
//!
//! Every computation is exact: rationals for angles, integers for chain
//! complexes, and sets of basis monomials over the two-element field for
//! cohomology.

pub mod abelian;
pub mod char_classes;
pub mod cocycle;
pub mod commuting;
pub mod f2;
pub mod orthogonal;
pub mod report;
pub mod smith;
pub mod suites;
pub mod surface;

pub use orthogonal::{Angle, D4Element, O2Element, O2Path};
