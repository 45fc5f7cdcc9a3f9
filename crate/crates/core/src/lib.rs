//! Triangular tree of rational pairs, triangle sequences and the L/R/I coding.

pub mod error;
pub mod exact_core;
pub mod farey1d;
pub mod verified_reals;
pub mod triangle_dynamics;
pub mod triangular_tree;
pub mod coding;
pub mod approximation;
pub mod cli;

pub use error::{Error, Result};
