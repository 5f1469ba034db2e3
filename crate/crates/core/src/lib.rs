//! Numerical toolkit for the complexified geometry of harmonic functions:
//! the isotropic cone and hull membership certificates, the twistor
//! correspondence between lines and planes, contour-integral representations
//! of harmonic functions, branch tracking for odd-dimensional kernels, and
//! the parabolic-subgroup model of null separation.

pub mod bateman;
pub mod complex;
pub mod error;
pub mod hull;
pub mod lie;
pub mod odd_dim;
pub mod region;
pub mod twistor;

pub use complex::{bilinear, ComplexVector, ProjectivePoint, Tolerances};
pub use error::{Error, Result};
pub use hull::{hull_membership, HullVerdict};
pub use region::{Obstacle, RegionExpr, RegionNode};
