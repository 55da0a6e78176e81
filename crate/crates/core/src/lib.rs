//! Exact evaluation, classification and gadget composition for Boolean
//! Holant problems and the counting CSP variant with even variable
//! occurrences and pinning (`#CSP₂ᶜ`).
//!
//! Every value is an exact element of Q(ζ₈). The crate covers:
//!
//! * signatures with affine support, their bundles and α-exponent normal form;
//! * membership in the product, affine, α-affine and local-affine families
//!   and the Holant\* families, plus the set-level dichotomy verdicts;
//! * a brute-force Holant oracle, gadget contraction, and polynomial-time
//!   solvers for product, affine and local-affine grids;
//! * generators for the standard named signatures and gadget replays.

pub mod affine;
pub mod bits;
pub mod classes;
pub mod corpus;
pub mod cyclo;
pub mod error;
pub mod expr;
pub mod factorize;
pub mod format;
pub mod grid;
pub mod mat2;
pub mod signature;
pub mod solvers;

use num_rational::BigRational;

/// Exact element of Q(ζ₈) with arbitrary-precision rational coordinates.
pub type Cyc8 = cyclo::Cyclo8<BigRational>;

/// Fixed-precision variant; overflows on long products.
pub type Cyc8Small = cyclo::Cyclo8<num_rational::Rational64>;

/// Floating-point variant, for display and quick numerics.
pub type Cyc8F64 = cyclo::Cyclo8<f64>;

pub use affine::{AffineSupport, AlphaForm, BundleTable};
pub use error::{Error, Result};
pub use grid::{Port, SignatureGrid};
pub use mat2::Mat2;
pub use signature::Signature;
