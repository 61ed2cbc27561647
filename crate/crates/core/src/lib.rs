//! Stopping redundancy of binary linear codes: exact upper bounds on the
//! stopping redundancy and its hierarchy, and builders for redundant
//! parity-check matrices that reach a given stopping distance.

pub mod bounds;
pub mod budget;
pub mod cli;
pub mod codes;
pub mod combinadic;
pub mod construct;
pub mod cover;
pub mod error;
pub mod gf2;
pub mod tables;

pub use budget::Budget;
pub use codes::LinearCode;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
