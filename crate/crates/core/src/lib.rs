//! Exact arithmetic in the localized Grothendieck ring of varieties and its
//! completion, together with the computations it supports: Kapranov zeta
//! functions and symmetric powers, surface-group representation variety
//! classes, commuting-tuple varieties via branching matrices, conjugacy-class
//! censuses of general linear groups, Kostka-matrix motivic decompositions,
//! Frobenius counts for finite groups, and a brute-force finite-field
//! counting oracle that cross-checks every numeric specialization.
//!
//! All values are exact: coefficients are arbitrary-precision rationals,
//! classes are polynomials in the Lefschetz class `q` divided by products
//! `q^a (q^b - 1)^c`, and the completed ring is modelled by truncated
//! Laurent series in `u = 1/q` with explicit precision tracking.
//!
//! The crate is `no_std` (with `alloc`); everything IO-related lives in the
//! companion CLI crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod catalog;
pub mod commuting;
pub mod error;
pub mod frobenius;
pub mod kostka;
pub mod limit;
pub mod motclass;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod repstab;
pub mod series;
pub mod text;
pub mod zeta;

pub use error::Error;
pub use limit::{LimitReport, MotSequence};
pub use motclass::MotClass;
pub use poly::QPolynomial;
pub use series::LaurentSeries;

/// Arbitrary-precision rational, the coefficient type of the whole engine.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
