//! Exact generalized inverses of tree adjacency matrices.
//!
//! For a tree `T` with adjacency matrix `A`, the generalized (Moore–Penrose,
//! equivalently group) inverse has entries `μ(u, v) / m(T)`, where `m(T)` is
//! the number of maximum matchings and `μ(u, v)` is a signed count of the
//! maximum matchings that turn the `u`–`v` path into an alternating path
//! whose end edges are matched. This crate computes that formula, computes
//! the pseudoinverse independently by exact rational elimination, and checks
//! the matching identities that tie the two together.
//!
//! Matrix code is generic over the scalar ([`linalg::Matrix`]); the aliases
//! below fix the scalar types used throughout the tree-facing API.

pub mod cli;
pub mod error;
pub mod geninv;
pub mod graph6;
pub mod io;
pub mod linalg;
pub mod matching;
pub mod oracle;
pub mod tree;
pub mod verify;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

/// Exact rational matrix.
pub type RationalMatrix = linalg::Matrix<BigRational>;
/// Exact rational matrix over machine integers (overflow panics in debug builds).
pub type Rational64Matrix = linalg::Matrix<Ratio<i64>>;
/// Arbitrary-precision integer matrix.
pub type IntegerMatrix = linalg::Matrix<BigInt>;
pub type FloatMatrix = linalg::Matrix<f64>;
pub type Float32Matrix = linalg::Matrix<f32>;

pub use error::{LinalgError, MatchingError, TreeError};
pub use geninv::{adjacency_matrix, generalized_inverse, inverse_graph, LabeledGraph};
pub use matching::{mu, mu_table, MatchingSummary, MuTable};
pub use oracle::exact_pseudoinverse;
pub use tree::{Bipartition, Forest, Tree, TreePath};
pub use verify::{verify_all, VerificationReport, VerifyConfig};
