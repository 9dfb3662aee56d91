//! Exact arithmetic on the projective line: scalars, polynomials, rational functions,
//! divisors, linear systems and truncated series.

pub mod bigfloat;
pub mod divisor;
pub mod linalg;
mod modgcd;
pub mod poly;
pub mod ratfun;
pub mod scalar;
pub mod series;

pub use bigfloat::BigFloatC;
pub use divisor::{resultant, Divisor};
pub use linalg::{solve_affine, AffineSolution, Matrix};
pub use poly::Poly;
pub use ratfun::{PointP1, RatFun, ITERATE_DEGREE_CAP};
pub use scalar::{Field, Scalar};
pub use series::{Coeff, Series};
