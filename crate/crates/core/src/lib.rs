//! Exact order types and 3-orders.
//!
//! A 3-order is an assignment of `-1`, `0` or `+1` to the triples of a
//! finite set, alternating under permutation of the triple, that satisfies
//! the interiority condition. The crate provides
//!
//! * [`orientation`]: storage for orientation maps,
//! * [`geometry`]: exact points, the orientation predicate and order types,
//!   generic over the coordinate type,
//! * [`axioms`]: interiority checking and `conv` membership,
//! * [`classify`]: canonical forms, convex-position and fast-growing
//!   recognition, enumeration and grid censuses,
//! * [`construct`]: explicit point sets, including the recursive
//!   amplification used for density arguments,
//! * [`io`]: the JSON file formats used by the command line tool.

pub mod axioms;
pub mod classify;
pub mod construct;
pub mod error;
pub mod geometry;
pub mod io;
pub mod orientation;
pub mod perm;

use num_bigint::BigInt;

pub use error::{Error, Result};
pub use orientation::{ElementId, OrientationMap, Sign, SignedTriple};

/// Arbitrary-precision rational coordinate.
pub type Rational = num_rational::BigRational;
/// Exact rational point.
pub type RatPoint = geometry::Point<Rational>;
/// Exact rational point set.
pub type RatPointSet = geometry::PointSet<Rational>;
/// Small integer point, used for grid enumeration.
pub type IntPoint = geometry::Point<i64>;
pub type IntPointSet = geometry::PointSet<i64>;
/// Arbitrary-precision integer point.
pub type BigIntPoint = geometry::Point<BigInt>;
