//! Roots of the Dehn twist about a nonseparating curve.
//!
//! A root of degree `n` of `t_C` on a closed surface of genus `g + 1` is a
//! mapping class `h` with `hⁿ = t_C`. This crate classifies such roots by
//! their data sets, enumerates them exhaustively, reports the realized
//! degrees, replays the homology-level checks of an explicit degree-3 root
//! and searches for square roots of a transvection in the integer symplectic
//! group.
//!
//! All arithmetic is exact.

pub mod annulus;
pub mod arith;
pub mod cli;
pub mod enumeration;
pub mod exec;
pub mod nielsen;
pub mod symplectic;
pub mod twistword;

pub use arith::Rational;
pub use enumeration::{degree_spectrum, enumerate_datasets, exists_root, marked_obstructions, SpectrumReport};
pub use exec::Exec;
pub use nielsen::{BoundaryConvention, DataSet};
