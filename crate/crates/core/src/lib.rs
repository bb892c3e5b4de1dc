#![doc = include_str!("../README.md")]

pub mod combinatorics;
pub mod error;
pub mod exact;
pub mod identities;
pub mod padic;
pub mod ratfun;

pub use error::{Error, Result};
pub use exact::{Rational, Residue};
