//! Exact computation of isotropy groups of derivations on the quantum plane.
//!
//! The quantum plane is the algebra generated by `x`, `y` subject to
//! `yx = q*xy` with `q^2 != 1`. Every automorphism is diagonal,
//! `x -> mu1*x`, `y -> mu2*y`, and the automorphisms commuting with a fixed
//! derivation form the isotropy group of that derivation. This crate computes
//! that group exactly: whether it is the full torus, infinite with a finite
//! component group, or finite with explicit invariant factors and generators.
//!
//! All arithmetic is exact. Coefficients live in a cyclotomic-Laurent ring
//! (rationals extended by a root of unity and a formal or specialized `q`);
//! group data lives in the torsion of `(Q/Z)^2`. No floating point anywhere.
//!
//! Module map:
//! - [`scalar`]: the coefficient ring, cyclotomic polynomials, `q` handling.
//! - [`qplane`]: normal-form polynomials, derivations, diagonal automorphisms,
//!   and the commutation test.
//! - [`torus`]: character constraints `mu1^m mu2^n = 1`, Smith normal form,
//!   the two-equation closed form, brute-force torsion enumeration.
//! - [`isotropy`]: derivation -> group report orchestration, finiteness and
//!   realizability criteria.
//! - [`geometry`]: intersection multiplicities at infinity for the binomial
//!   curves and the Bezout ledger.
//! - [`oracles`]: independent reference routines (free-algebra rewriting,
//!   schoolbook division) used by the verification suites.
//!
//! ```
//! use qpi_core::isotropy::isotropy_group_of_inner;
//! use qpi_core::qplane::QPoly;
//! use qpi_core::scalar::{QSpec, Scalar};
//! use qpi_core::torus::Classification;
//!
//! // The isotropy group of ad_w for w = x^3 y + x^2 y^2, with q formal:
//! // the cyclic group of order 4.
//! let spec = QSpec::Transcendental;
//! let w = QPoly::parse("x^3*y + x^2*y^2", &spec)?;
//! let result = isotropy_group_of_inner(&w, &Scalar::zero(), &Scalar::zero(), &spec)?;
//! assert_eq!(result.report.classification, Classification::Finite);
//! assert_eq!(result.report.order, Some(4));
//! assert_eq!(result.report.invariants, (4, 1));
//! # Ok::<(), qpi_core::Error>(())
//! ```

pub mod error;
pub mod geometry;
mod intmath;
pub mod isotropy;
pub mod oracles;
mod parse;
pub mod qplane;
mod ratpoly;
pub mod scalar;
pub mod torus;

pub use error::{Error, ErrorCategory, Result};
pub use scalar::{QSpec, Scalar};
