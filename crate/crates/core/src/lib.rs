//! Exact computations with the double affine Hecke algebra of a reduced root
//! system: the polynomial representation, its trigonometric and rational
//! degenerations, the constant-term pairing, and rank-one transform numerics.

pub mod coeffs;
pub mod emit;
pub mod error;
pub mod pairing;
pub mod polyrep;
pub mod rank1;
pub mod ratdiff;
pub mod report;
pub mod roots;
pub mod suites;
pub mod trigdunkl;

pub use error::{Error, Result};
