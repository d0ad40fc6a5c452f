//! Exact combinatorics of affine Lie algebras at rational level: root data,
//! finite and affine Weyl groups, finite characters, translation functors on
//! Weyl modules and the transport of singular-vector labels.

pub mod affine;
pub mod annihilator;
pub mod cli;
pub mod error;
pub mod finchar;
pub mod rootsys;
pub mod translate;
pub mod weyl;

pub use error::{Error, Result};
