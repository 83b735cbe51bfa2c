//! Exact-arithmetic pre-Calabi-Yau calculus.
//!
//! The crate implements, over exact rational coefficients:
//!
//! - Hochschild cochains/chains of a finite-dimensional graded algebra, the
//!   Gerstenhaber product and bracket, and A-infinity validation
//!   ([`hochschild`]);
//! - higher Hochschild cochains with the dimension-`d` cyclic action, the
//!   necklace product/bracket, Maurer-Cartan verification, and morphisms of
//!   pre-Calabi-Yau structures ([`necklace`]);
//! - the finite-dimensional dictionary between pre-CY structures and cyclic
//!   A-infinity structures ([`duality`]);
//! - marked ribbon quivers with d-orientations: validation, surface topology,
//!   degree, the separation differential, composition, enumeration, and
//!   rational homology of the quiver complexes ([`quiver`]);
//! - evaluation of marked ribbon quivers on Hochschild chains and the
//!   chain-map identity checker ([`action`]).
//!
//! Everything is exact: scalars are arbitrary-precision rationals and every
//! identity is checked to be literally zero.

pub mod scalar;
pub mod grading;
pub mod perm;
pub mod lc;
pub mod linalg;
pub mod hochschild;
pub mod necklace;
pub mod duality;

pub use grading::{BasisId, DegreeTriple, GradedBasis};
pub use scalar::Scalar;
