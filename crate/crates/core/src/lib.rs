//! Spin character counting functions for the double covers of the symmetric
//! and alternating groups, computed exactly by bar-partition enumeration and
//! by truncated generating functions, together with machinery to check
//! Ramanujan-type congruences for them.

pub mod abacus;
pub mod arith;
pub mod barcomb;
pub mod cli;
pub mod congruence;
pub mod error;
pub mod identities;
pub mod qseries;
pub mod spincounts;

pub use error::{Error, Result};
