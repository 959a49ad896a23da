//! Small centrally symmetric polytopes whose vertices are normalized subset
//! indicator vectors, and the projective-space triangulations they induce.
//!
//! The crate is organized along the pipeline:
//!
//! - [`family`]: subset families `V` over `{1,…,n}`, the grouped construction
//!   and its combinatorial conditions (singletons, downward closure, exchange).
//! - [`geometry`]: the embedding of signed subsets on the unit sphere, exact
//!   inner products, the face lattice of `conv(V ⊔ −V)` and the facet-level
//!   checks (orthant property, antipodal disjointness, support witnesses).
//! - [`triangulation`]: the pulling triangulation of the boundary with
//!   antipodal pairs pulled consecutively, and the quotient by the antipodal
//!   involution.
//! - [`homology`]: boundary matrices, Smith normal form, GF(2) ranks and the
//!   homology of the quotient compared with that of real projective space.

pub mod error;
pub mod family;
pub mod geometry;
pub mod homology;
pub mod report;
pub mod subset;
pub mod triangulation;

pub use error::{Error, Result};
pub use family::{GroupPartition, SubsetFamily};
pub use geometry::{ExactScalar, FaceLattice, HullOptions, Sign, SignedVertex};
pub use homology::{Coefficients, HomologyResult};
pub use report::{ConditionReport, Violation};
pub use subset::Subset;
pub use triangulation::{Involution, SimplicialComplex};
