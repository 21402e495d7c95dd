//! Exact-arithmetic models for the linear-algebra side of Shimura varieties:
//! the Siegel upper half space and its symplectic action, complex structures
//! and Lagrangian frames, lattice models of principally polarized abelian
//! varieties with level structures and Hecke correspondences, finite
//! symplectic groups, real Galois cohomology of unitary groups and inner-form
//! gluing, PEL-datum validation, Hasse-Weil zeta series over finite fields,
//! and a finite-group model of the compact-quotient trace formula.
//!
//! Everything is computed over exact scalar rings (arbitrary-precision
//! rationals, Gaussian rationals, residues mod n, small finite fields); no
//! floating point enters any result. The only `f64` in the crate is the
//! numeric residual used to compare the two candidate invariant metrics on
//! Siegel space.
//!
//! All public values are immutable after construction and all operations are
//! pure functions, so everything here is safe to share across threads.

pub mod abvar;
pub mod error;
pub mod finsymp;
pub mod galcoh;
pub mod hodge;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod modn;
pub mod pel;
pub mod sampling;
pub mod scalar;
pub mod siegel;
pub mod trace;
pub mod zeta;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use scalar::{Field, GaussRat, Ring};

/// Arbitrary-precision integer scalar.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational scalar, always reduced, denominator > 0.
pub type Rat = num_rational::BigRational;

/// Dense matrix over the integers.
pub type ZMat = Matrix<Int>;
/// Dense matrix over the rationals.
pub type QMat = Matrix<Rat>;
/// Dense matrix over the Gaussian rationals.
pub type GMat = Matrix<GaussRat>;
/// Dense machine-integer matrix, used for residue arithmetic mod small n.
pub type IMat = Matrix<i64>;
