//! Construction and verification of norm-one formulas for finite groups
//! acting on noncommutative rings.

pub mod cocycle_solver;
pub mod formula_lib;
pub mod group;
pub mod int;
pub mod matrix_oracle;
pub mod method;
pub mod ncring;

pub use int::Int;
