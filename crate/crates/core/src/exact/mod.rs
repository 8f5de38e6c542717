//! Exact arithmetic substrate: rationals, polynomials, rational functions and
//! their expansions at infinity.

pub mod asymptotic;
mod modular;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use asymptotic::{expand_at_infinity, series_combine, AsymptoticSeries, Precision, SeriesOp};
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::{rat, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator polynomial")]
    ZeroDenominator,
    #[error("degree of the zero function is undefined")]
    ZeroFunction,
    #[error("pole at m = {0}")]
    Pole(Rational),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
