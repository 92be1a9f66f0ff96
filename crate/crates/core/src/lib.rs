//! Finite subgroups of Bianchi groups `PSL₂(o)` and of unit groups of maximal
//! orders in quaternion algebras over imaginary quadratic fields.
//!
//! The closed-form theory lives in [`arith`], [`quadfield`], [`quaternion`],
//! [`orders`] and [`bianchi`]. [`oracle`] holds two brute-force checks that
//! share none of that code: a bounded matrix search in `SL₂(o)` and a lattice
//! count on the tree of maximal orders of `M₂(k_p)`. [`verify`] runs the sweeps
//! that compare them.

pub mod arith;
pub mod bianchi;
pub mod error;
pub mod oracle;
pub mod orders;
pub mod quadfield;
pub mod quaternion;
pub mod ring;
pub mod verify;

pub use arith::Place;
pub use bianchi::SubgroupKind;
pub use error::{Error, Result};
pub use orders::LambdaClass;
pub use quadfield::{ImagQuadField, SplitType};
pub use quaternion::QuaternionAlgebraQ;

/// Element of `o` for the subgroup search.
pub type QuadInt64 = ring::QuadInt<i64>;
/// Matrix over `o` for the subgroup search.
pub type GaussianMatrix = ring::Mat2<i64>;
pub type QuadRing64 = ring::QuadRing<i64>;
/// Element of `Z[√−d]` for the local lattice computations.
pub type QuadInt128 = ring::QuadInt<i128>;
pub type QuadRing128 = ring::QuadRing<i128>;
pub type Mat2Wide = ring::Mat2<i128>;
