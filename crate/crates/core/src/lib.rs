//! Exact computations with Poisson brackets of multivariate polynomials over
//! the rationals: brackets and their degrees, reduction against a commuting
//! homogeneous polynomial, closed-form homogeneous components of a partner
//! `G` of small bracket degree, the lattice minimizations behind the
//! divisibility estimates, and randomized experiments.

pub mod bracket;
pub mod cli;
pub mod config;
pub mod conjecture;
pub mod error;
pub mod formulas;
pub mod hreduce;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod selftest;
pub mod serde_util;
pub mod structure;

pub use error::{Error, Result};
pub use poly::{Degree, HomogeneousPoly, Monomial, Poly, Rational};
