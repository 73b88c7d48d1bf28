//! Exact verification engine for Poisson-Lie structures on the ten-parameter
//! Galilei group in 3+1 dimensions.
//!
//! Everything is computed in exact rational arithmetic. Derivatives are taken
//! with dual numbers (first-order jets), so every verification residual is an
//! exact rational that is either literally zero or a genuine counterexample.

pub mod scalar;
pub mod dual;
pub mod rng;
pub mod linalg;
pub mod group;
pub mod bivector;
pub mod eta;
pub mod bialgebra;
pub mod automorphism;
pub mod catalog;
pub mod bracket;
pub mod verify;
pub mod cli;
