//! Exact computations around Deligne–Mostow weights `(1/6,…,1/6, 1/3,1/3,1/3)`
//! style point configurations on ℙ¹ and K3 surfaces with a D4 point.
//!
//! Everything is exact: integers are `BigInt`, rationals are `BigRational`,
//! and the cyclotomic field ℚ(ζ₃) is implemented directly.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod cli;
pub mod covers;
pub mod eisenstein;
pub mod fibration;
pub mod fixtures;
pub mod identity;
pub mod lattices;
pub mod suite;
