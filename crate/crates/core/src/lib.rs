//! Formal group laws over Hopf algebras, with exact rational arithmetic.
//!
//! [`hopf`] builds truncated polynomial Hopf algebras and their tensor
//! powers, [`series`] implements truncated power series with coefficients
//! in those tensor powers, and [`formal_group`] puts them together: axiom
//! checks, logarithms, cocycles and the reconstruction of a law from a
//! cocycle and a primitive series.

#![no_std]
extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

mod error;
pub mod formal_group;
pub mod hopf;
pub mod parse;
mod rational;
pub mod series;

pub use error::Error;
pub use rational::Rational;
