//! Exact symbolic-numeric engine for recurrence relations and ladder
//! operators of q-hypergeometric functions on q-linear lattices.
#![no_std]

extern crate alloc;

pub mod error;
pub mod families;
pub mod field;

pub use error::{Error, Result};
pub mod hyper;
pub mod lattice;
pub mod phi;
pub mod relation;
