//! Vector partition functions of two-row integer matrices.
//!
//! Counts nonnegative integer solutions of `M x = b` for a 2 x n matrix `M`
//! whose columns lie in an open half-plane. For 1-prime matrices the count is
//! given chamber by chamber as a polynomial plus periodic Fourier-Dedekind
//! corrections; [`oracle`] counts by enumeration for everything else.

pub mod arith;
pub mod dedekind;
pub mod error;
pub mod formula;
pub mod frobenius;
pub mod lattice;
pub mod moments;
pub mod numeric;
pub mod oracle;
pub mod quasipoly;
pub mod truncated_power;

pub use error::{Error, Result};
