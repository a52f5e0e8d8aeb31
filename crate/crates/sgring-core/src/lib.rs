//! Exact-arithmetic invariants of simplicial affine semigroups.
//!
//! The crate decides, for a semigroup presented by integer generators in
//! `N^d`, the properties that reduce to finite lattice combinatorics:
//! orthogonal normal form, Apéry sets and socles, the Cohen-Macaulay,
//! normality and slimness tests, Hilbert series, canonical-module
//! generators and multiplicities, the almost Gorenstein (AG) criterion
//! with certificates, and the classification of two-dimensional
//! cyclic-quotient semigroups through Hirzebruch-Jung continued fractions.
//!
//! All arithmetic is exact: `i64` with checked operations in the lattice
//! layer, arbitrary-precision integers and rationals inside the cone
//! decision procedures. Searches are bounded by [`Limits`] and report
//! typed resource errors instead of running open-ended.

pub mod apery;
pub mod canonical;
pub mod cone;
pub mod cyclic;
pub mod error;
pub mod lattice;
pub mod limits;
pub mod pipeline;
pub mod semigroup;
pub mod series;

pub use error::{Error, Result};
pub use lattice::{IntMatrix, IntVector};
pub use limits::Limits;
pub use pipeline::{analyze, Analysis};
pub use semigroup::{MembershipOracle, OrthogonalPresentation, Presentation};
