//! Exact computer algebra for quaternionic slice regular polynomials.
//!
//! The crate implements the ring `H[q1, ..., qn]` with the star product,
//! conjugation and symmetrization, evaluation at points with commuting
//! components, right-ideal membership with checkable certificates, and zero
//! sets on the union of slices together with their spherical orbits.

pub mod error;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod numeric;
pub mod point;
pub mod poly;
pub mod quat;
pub mod rational;
pub mod split;
pub mod suite;
pub mod syntax;
pub mod univar;
pub mod variety;

pub use error::{Error, Result};
pub use poly::{MonomialOrder, MultiIndex, OrderKind, SlicePoly};
pub use quat::Quaternion;
pub use rational::Rational;
