//! Exact equivariant polyhedral geometry.
//!
//! This crate computes with cones and affine monoids that are invariant under
//! the infinite symmetric group acting on coordinates. An invariant cone in
//! the space of finitely supported vectors is studied through its chain of
//! finite-dimensional slices; everything here is about making statements
//! about the whole chain from finitely much exact computation:
//!
//! * [`vector`], [`perm`], [`orbit`]: finitely supported rational vectors,
//!   coordinate permutations, and `Sym(n)`-orbit enumeration via multiset
//!   permutations.
//! * [`cone`]: rational polyhedral cones in synchronized double description
//!   (exact V- and H-representations, duals, intersections, membership
//!   certificates).
//! * [`chain`]: localization of an invariant cone to its dimension-`n`
//!   slices, stability indices with recombination certificates, and the
//!   coordinate-merge test.
//! * [`dualchain`]: finite bases that present every dual slice at once (a
//!   padded generator set plus one unit vector orbit), and the verifier that
//!   checks the presentation dimension by dimension.
//! * [`caratheodory`]: conic decompositions of a vector over the orbit of a
//!   nonnegative generator set, with the support-size bound on the number of
//!   terms, plus exact minimum-term search.
//! * [`monoid`]: Hilbert bases of the integer-point monoids of the slices,
//!   chain stabilization reports, and a brute-force cross-check oracle.
//!
//! All arithmetic is exact rational ([`rat`]); no floating point is used
//! anywhere, so every verdict is a certificate, not an approximation.

pub mod caratheodory;
pub mod chain;
pub mod cone;
mod dd;
pub mod dualchain;
pub mod error;
pub mod jsonio;
mod linalg;
mod lp;
pub mod monoid;
pub mod orbit;
pub mod perm;
pub mod rat;
mod triangulate;
pub mod vector;

pub use cone::{LocalCone, Membership};
pub use error::{Error, Result};
pub use rat::Rat;
pub use vector::FsVector;

/// Default cap on the size of any single orbit enumeration.
pub const DEFAULT_ORBIT_CAP: usize = 100_000;

/// Default step budget for combinatorial searches (minimum-term search,
/// integer point enumeration).
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Default 1-norm bound for the brute-force Hilbert basis oracle.
pub const DEFAULT_NORM_BOUND: u64 = 12;
