//! PPT edge states on `C^3 ⊗ C^3` and the machinery to analyse them.
//!
//! The crate is `no_std` (it needs `alloc`). It covers:
//!
//! * [`linalg`]: small dense complex linear algebra (Jacobi eigensolver,
//!   one-sided Jacobi SVD, projectors) and exact rational rank.
//! * [`bipartite`]: operators on `C^dA ⊗ C^dB`, partial transpose,
//!   realignment, product vectors and Schmidt coefficients.
//! * [`catalog`]: the (5,5) and (6,6) edge states with their exact range
//!   bases and product-vector families, plus a few reference states.
//! * [`optimize`]: deterministic multistart see-saw minimisation over
//!   product vectors and over Schmidt-rank-limited vectors.
//! * [`criteria`]: PPT, realignment and range-criterion (edge) checks.
//! * [`witness`]: kernel and realignment witnesses, shifting, and
//!   Schmidt-rank-two negativity searches.

#![no_std]

extern crate alloc;

pub mod bipartite;
pub mod catalog;
pub mod criteria;
mod error;
pub mod linalg;
pub(crate) mod math;
pub mod optimize;
pub mod witness;

pub use bipartite::{BipartiteOperator, ProductVector};
pub use catalog::CatalogEntry;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, RationalMatrix};
pub use num_complex::Complex64;
pub use optimize::{OptResult, SeeSawConfig};
pub use witness::Witness;

/// Default relative threshold for numerical rank decisions.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Absolute tolerance for Hermiticity checks.
pub const HERMITIAN_TOL: f64 = 1e-12;
