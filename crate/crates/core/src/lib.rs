//! Exact numerical invariants of moduli spaces of parabolic bundles on a curve.
//!
//! Everything here works on discrete data only: genus, rank, degree, and for
//! each marked point the flag multiplicities and (optionally) rational weights.
//! From that data the crate computes the wall-and-chamber structure of the
//! compatible weight face, the genericity criterion for fine moduli, flip
//! exponents at a wall, the slope gap `ε(d, r)`, the shifting operator, Hecke
//! chains between degrees `d` and `d - 1`, and a rule-based rationality oracle.
//!
//! All arithmetic is exact. There is no floating point anywhere in the crate.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod hecke;
pub mod invariants;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod shift;
pub mod weightspace;

pub use error::{Error, Result, Violation};
pub use model::{ExpandedWeight, MarkedPoint, ParabolicData, SubType, Weights};
pub use rational::Rational;
