//! Hermitian squares in the *-algebra generated by the unilateral shift.
//!
//! Every element of the algebra generated by the shift `S` on `l²(ℕ₀)` and
//! its adjoint is a banded Toeplitz operator plus a finite matrix in the
//! top-left corner. This crate stores elements in that normal form, does
//! exact ring arithmetic on them, and decides whether a hermitian element
//! `X` is a nonnegative operator. When it is, [`factorize::factorize`]
//! returns a lower-triangular `Y` in the same algebra with `X = Y*Y`;
//! when it is not, it returns a checkable witness.
//!
//! Module map:
//!
//! - [`laurent`]: Laurent polynomials, the involution, circle evaluation.
//! - [`spectral`]: scalar spectral factorization `p = q̄q` (roots and Bauer).
//! - [`algebra`]: the normal form `T_p + F` and its ring operations.
//! - [`factorize`]: block partition, backward Cholesky, the certificate.
//! - [`oracle`]: brute-force truncation checks used as ground truth.
//! - [`generate`]: seeded random instances.
//! - [`demo`]: the forward-versus-backward Cholesky comparison on a worked example.
//! - [`cli`]: the `ncfr` command-line front end.

pub mod algebra;
pub mod cli;
pub mod demo;
pub mod error;
pub mod factorize;
pub mod generate;
pub mod laurent;
mod linalg;
pub mod oracle;
pub mod spectral;

pub use algebra::{AlgebraElement, TriangularElement};
pub use error::{Error, Result};
pub use factorize::{factorize, PositivityCertificate, Verdict, Witness};
pub use laurent::{AnalyticPolynomial, HermitianLaurentSymbol, LaurentPoly};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix used throughout.
pub type CMatrix = nalgebra::DMatrix<C64>;
