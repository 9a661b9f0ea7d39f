//! Partition functions of vertex and edge colouring models over finite
//! abelian groups, and the identities linking them to the Tutte polynomial,
//! flow and tension weight enumerators, and signed edge colourings.
//!
//! Every evaluator is an exhaustive sum guarded by a [`Budget`]; the
//! [`oracles`] module provides independent brute-force ground truth.

pub mod corpus;
pub mod duality;
pub mod enumerate;
pub mod error;
pub mod fourier;
pub mod graph;
pub mod group;
pub mod models;
pub mod numeric;
pub mod oracles;
pub mod signed;

pub use enumerate::Budget;
pub use error::{Error, Result};
pub use fourier::QFunction;
pub use graph::{EdgeSubset, HalfEdge, Multigraph, Orientation, RotationSystem};
pub use group::{GroupElem, GroupSpec};
pub use num_complex::Complex64;
