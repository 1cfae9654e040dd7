//! Difference-of-sums-of-squares (DSOS) and difference-of-convex-sums-of-squares
//! (DCSOS) decompositions of multivariate polynomials.
//!
//! Every polynomial `p` can be written as `s1 − s2` where `s1`, `s2` are sums of
//! squares (DSOS), or sums of squares that are also convex (DCSOS). This crate
//! builds such decompositions without semidefinite programming:
//!
//! * [`dsos`]: parity separation of monomials (three-square and minimal-degree forms);
//! * [`spectral`]: Gram matrices over direct or minimal monomial bases and their eigendecomposition;
//! * [`dcsos`]: convexity certificates assembled from elementary products, including
//!   minimal-degree constructions based on an inclusion–exclusion power identity;
//! * [`verify`]: independent re-expansion, degree/square-count audits and convexity spot checks.
//!
//! Polynomials are exact ([`poly::Polynomial`] over `BigRational`) and can be read
//! from text with [`parser::parse`].

pub mod cli;
pub mod dcsos;
pub mod dsos;
pub mod error;
pub mod parser;
pub mod poly;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use parser::parse;
pub use poly::{Exponent, Monomial, Polynomial, Rational};
