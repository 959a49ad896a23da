//! Symmetric pulling triangulations of `∂P(V)` and their antipodal quotients.

mod complex;
mod pulling;
mod quotient;

pub(crate) use complex::alternating_sum as euler_of;
pub use complex::{ComplexDocument, Involution, SimplicialComplex};
pub use pulling::{pull_triangulate, pulling_triangulation};
pub use quotient::{check_equivariance, check_star_disjointness, lift_counts, quotient};
