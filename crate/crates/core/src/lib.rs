//! Lattice polytopes representing natural numbers.
//!
//! Each natural `M` is the lattice point of its prime exponents; the polytope
//! of `N` is the convex hull of the points of `1..=N` in dimension `pi(N)`.
//! This crate builds those polytopes exactly, measures them (volume, faces,
//! skeleton, width, Ehrhart data), sums their volumes over subsets of the
//! naturals, and checks the results against published reference tables.

pub mod arith;
pub mod cli;
pub mod constants;
pub mod error;
pub mod hull;
pub mod metrics;
pub mod numsys;
pub mod refdata;
pub mod sequence;

pub use error::{Error, Result};
