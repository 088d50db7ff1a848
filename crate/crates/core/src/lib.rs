//! Exact reconstruction of the dual unit ball of an integer-valued seminorm.
//!
//! A seminorm `N` on `R^d` that takes integer values on `Z^d` is the maximum
//! of finitely many integer linear functionals. This crate recovers those
//! functionals by probing `N` along lattice rays: far enough along a ray that
//! lies inside the normal cone of a vertex `y` of the dual ball, the forward
//! differences `N(x + e_j) - N(x)` are exactly the coordinates of `y`.
//! Collected vertices are assembled into a polytope whose facets are then
//! probed until every facet is confirmed against the oracle.
//!
//! All arithmetic is exact.

pub mod error;
pub mod exact;
pub mod geometry;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod plot;
pub mod reconstruct;
pub mod seminorm;

pub use error::{Error, Result};
pub use exact::{IntMatrix, Integer, LatticeVector, RatVector, Rational};
pub use geometry::{Facet, Polytope, SupportResult};
pub use reconstruct::{Budget, CertificationReport, ExposureCertificate, RayProbe, Reconstruction};
pub use seminorm::{SeminormSpec, ValidationReport};
