//! Spectral machinery for generalized Laplacians of symmetric matrices on
//! trees.
//!
//! The crate provides:
//!
//! - dense symmetric matrices with an exact-integer flag and a
//!   bit-reproducible Jacobi eigensolver ([`matrix`], [`eigen`]);
//! - labeled trees with enumeration, uniform sampling, and derived
//!   adjacency/distance matrices ([`tree`]);
//! - the generalized Laplacian, the difference/summation matrix pair and its
//!   exact identities, the compressed (n-1)x(n-1) matrix, eigenvector
//!   compression and lifting, and sign-pattern classification
//!   ([`laplacian`]);
//! - monotonicity conditions tying matrix entries to tree distances or to
//!   the vertex order of a path, with deterministic integer generators
//!   ([`conditions`]);
//! - the two-case structure test for eigenvectors on trees ([`fiedler`]);
//! - a search-and-verify harness over (tree, matrix) instances with
//!   eigenvalue-multiplicity handling, refinement of would-be
//!   counterexamples, and reproducible reports ([`harness`]);
//! - matrix families and verification suites behind trait-object
//!   registries, selected by name at runtime ([`family`],
//!   [`harness::suites`]).

pub mod charpoly;
pub mod conditions;
pub mod eigen;
pub mod error;
pub mod family;
pub mod fiedler;
pub mod harness;
pub mod laplacian;
pub mod matrix;
pub mod rng;
pub mod solve;
pub mod tree;

pub use error::{Error, Result};
