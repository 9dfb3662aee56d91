//! Differential invariants of rational maps of the Riemann sphere.
//!
//! A rational map `R` is tested against the three groupoid equations it may solve: an
//! order-one equation `η(y) y1^n = η(x)`, the affine equation `μ(y) y1 + y2/y1 = μ(x)` and
//! the projective equation `ν(y) y1^2 + S(y) = ν(x)`. The coefficients are rational
//! functions found by exact linear algebra over a pole-candidate divisor built from the
//! postcritical orbit.

pub mod algebra;
pub mod cli;
pub mod dynamics;
pub mod equations;
pub mod error;
pub mod families;
pub mod jets;
pub mod koenigs;
pub mod solver;

pub use error::{Error, Result};
