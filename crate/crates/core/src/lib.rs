//! Geometry of the tetrablock and the symmetrized bidisc.
//!
//! Membership predicates, the `Φ_ω`/`Ψ_ω` map family, separating and
//! supporting complex hyperplanes, and a numerical C-convexity scanner.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod cconvexity;
pub mod domains;
pub mod error;
pub mod hyperplanes;
pub mod maps;
pub mod projective;
pub mod rng;
pub mod suites;

pub use domains::{CPoint2, CPoint3, Rho, Tolerance, C64};
pub use error::{Error, Result};
