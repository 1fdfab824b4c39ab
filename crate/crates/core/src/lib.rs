//! Exact arithmetic for alcoved lattice polytopes of Lie type A.
//!
//! An alcoved polytope is a bounded intersection of half-spaces of the form
//! `x_i - x_j <= k` with integer `k`, where `x_0` is identified with the
//! constant 0 so that plain bounds `x_i <= k` and `-x_i <= k` are covered by
//! the same shape. The constraint matrix is totally unimodular, hence every
//! such polytope has integer vertices and its combinatorics can be computed
//! with integer arithmetic alone. This crate provides:
//!
//! - difference-constraint systems: feasibility, boundedness, tight
//!   coordinate bounds, full-dimensionality ([`hrep`])
//! - named families and a seeded random generator ([`polytope`])
//! - lattice point enumeration and counting in dilates ([`enumerate`])
//! - Ehrhart polynomials and h*-vectors by exact interpolation ([`ehrhart`])
//! - the alcove triangulation and a boundary-compatible unimodular
//!   triangulation built from a lexicographic height function
//!   ([`triangulation`])
//! - unimodality, lattice-distance, reflexivity and related checks over
//!   h*-vectors and polytopes ([`analysis`])
//!
//! Everything is deterministic: no floating point, no hashing, no
//! randomness outside the seeded generator.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod analysis;
mod det;
pub mod ehrhart;
pub mod enumerate;
mod error;
pub mod hrep;
pub mod polytope;
pub mod rng;
pub mod triangulation;

pub use error::Error;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;
pub use num_bigint::BigInt;

pub type Result<T> = core::result::Result<T, Error>;
