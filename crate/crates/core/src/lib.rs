//! Exact computations for group-graded division algebras.

#![allow(clippy::needless_range_loop)]

pub mod abelian;
pub mod cli;
pub mod cohomology;
pub mod cyclotomic;
pub mod error;
pub mod graded_algebra;
pub mod groups;
pub mod par;
pub mod realization;
pub mod structure;

pub use error::{Error, Result};
