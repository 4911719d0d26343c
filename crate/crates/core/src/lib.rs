//! Arithmetic of real quadratic and biquadratic fields, Z[sqrt2] residue
//! symbols, finite 2-groups and the scans built on them.

pub mod arith;
pub mod biquad;
pub mod error;
pub mod genus;
pub mod groups2;
pub mod quadforms;
pub mod scanner;
pub mod smith;
pub mod towers;
pub mod zsqrt2;

pub use error::{Error, Result};
