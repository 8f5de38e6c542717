//! Exact multiple-correction acceleration of BBP-type series.
//!
//! The crate derives finite continued-fraction corrections `MC_k(n)` for the
//! tails of series `sum R(m) F(m) / q^m`, evaluates the corrected partial sums
//! inside rigorous rational enclosures, and certifies the sign conditions
//! behind the telescoping tail bounds.

pub mod evaluator;
pub mod exact;
pub mod positivity;
pub mod series;
pub mod solver;
pub mod tables;
