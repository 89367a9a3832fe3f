//! Exact computation and independent verification of scrollar invariants
//! of gonality pencils on nodal curves of type `(k,a)` on the quadric
//! surface P^1 x P^1.
//!
//! Everything is computed with exact arithmetic over a prime field or the
//! rationals: linear systems through point divisors become vanishing-
//! condition matrices, their ranks give projective dimensions, and every
//! closed-form claim (the dimension formula, the invariants
//! `e_i = a - y_i - 2`, the realizability bound) is cross-checked against
//! the rank oracle.
//!
//! The core is generic over the [`field::Scalar`] trait; the concrete
//! instantiations are [`Fp`] (prime fields, modular row reduction) and
//! [`Rational`] (arbitrary-precision rationals, fraction-free Bareiss
//! elimination).

pub mod builder;
pub mod cli;
pub mod error;
pub mod field;
pub mod io;
pub mod linsys;
pub mod matrix;
pub mod realize;
pub mod sampling;
pub mod scrollar;
pub mod surface;

pub use error::{Error, Result};
pub use field::{FieldSpec, Fp, Rational, Scalar};

/// Concrete instantiations over the two supported scalar types.
pub type FpMatrix = matrix::ExactMatrix<Fp>;
pub type RatMatrix = matrix::ExactMatrix<Rational>;
pub type FpForm = surface::BiForm<Fp>;
pub type RatForm = surface::BiForm<Rational>;
pub type FpConfig = linsys::NodeConfiguration<Fp>;
pub type RatConfig = linsys::NodeConfiguration<Rational>;

/// Default prime for generic computations: large enough that random
/// configurations are generic with overwhelming probability, small enough
/// for fast modular arithmetic.
pub const DEFAULT_PRIME: u64 = 10007;

/// Default prime for exhaustive singularity scans.
pub const DEFAULT_SCAN_PRIME: u64 = 499;
