//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`: numerator and denominator are
//! arbitrary-precision, the denominator is kept positive and the pair is
//! reduced after every operation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

use super::ExactError;

pub type Rational = BigRational;

/// Builds `num/den` from machine integers. Panics on a zero denominator,
/// so only use it with literal constants.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "rat: zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Arithmetic operator selector for [`rat_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat_arith(a: &Rational, b: &Rational, op: ArithOp) -> Result<Rational, ExactError> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => checked_div(a, b),
    }
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational, ExactError> {
    if b.is_zero() {
        Err(ExactError::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Parses `"p"`, `"-p"`, `"p/q"` with arbitrary-precision decimal integers.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let text = text.trim();
    let bad = || ExactError::Parse(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"num/den"` rendering; integers still carry `/1`.
pub fn to_fraction_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Compact rendering: integers without the `/1`.
pub fn to_compact_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        to_fraction_string(x)
    }
}

pub fn pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

pub fn pow_int(base: i64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

pub fn ceil_to_bigint(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor_to_bigint(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn sign(x: &Rational) -> Ordering {
    x.cmp(&Rational::zero())
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `floor(log10 |x|)` for nonzero `x`, exact.
pub fn floor_log10(x: &Rational) -> i64 {
    assert!(!x.is_zero());
    let x = x.abs();
    let ten = BigInt::from(10u32);
    let digits = |n: &BigInt| n.to_string().len() as i64;
    let mut e = digits(x.numer()) - digits(x.denom());
    // e is within one of the answer; correct it exactly.
    loop {
        let lower = pow(&from_bigint(ten.clone()), e);
        if x < lower {
            e -= 1;
            continue;
        }
        let upper = pow(&from_bigint(ten.clone()), e + 1);
        if x >= upper {
            e += 1;
            continue;
        }
        return e;
    }
}

/// Rough `f64` view, for display and tolerance diagnostics only.
pub fn approx_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let e = floor_log10(x);
    // 17 significant digits, truncated, so both parts fit an f64.
    let scaled = (x / pow(&int(10), e - 16)).trunc().to_integer();
    let mantissa = scaled.to_string().parse::<f64>().unwrap_or(f64::NAN) / 1e16;
    if e.abs() > 300 {
        return if e > 0 {
            f64::INFINITY.copysign(mantissa)
        } else {
            0.0f64.copysign(mantissa)
        };
    }
    mantissa * 10f64.powi(e as i32)
}

/// Scientific-notation string with `digits` significant digits, exact
/// truncation (not rounding).
pub fn to_sci_string(x: &Rational, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let e = floor_log10(x);
    let scaled = x.abs() / pow(&int(10), e - digits as i64 + 1);
    let mant = scaled.floor().to_integer().to_string();
    let sign = if x.is_negative() { "-" } else { "" };
    let (head, tail) = mant.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{e}")
    } else {
        format!("{sign}{head}.{tail}e{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_fractions() {
        let q = rat_arith(&rat(1, 4), &rat(73, 256), ArithOp::Div).unwrap();
        assert_eq!(q, rat(64, 73));
    }

    #[test]
    fn sum_of_fractions() {
        let s = rat_arith(&rat(21, 64), &rat(15, 7), ArithOp::Add).unwrap();
        assert_eq!(s, rat(1107, 448));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let r = rat_arith(&rat(3, 5), &Rational::zero(), ArithOp::Div);
        assert_eq!(r, Err(ExactError::DivisionByZero));
    }

    #[test]
    fn canonical_form() {
        let x = parse_rational("-6/-4").unwrap();
        assert_eq!(to_fraction_string(&x), "3/2");
        assert_eq!(to_fraction_string(&Rational::zero()), "0/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn parses_long_integers() {
        let x = parse_rational("197080602286603349404715625/1608316872287169019904").unwrap();
        assert_eq!(
            x.numer().to_string(),
            "197080602286603349404715625"
        );
    }

    #[test]
    fn log10_is_exact_at_powers() {
        assert_eq!(floor_log10(&int(1000)), 3);
        assert_eq!(floor_log10(&int(999)), 2);
        assert_eq!(floor_log10(&rat(1, 1000)), -3);
        assert_eq!(floor_log10(&rat(1, 1001)), -4);
        assert_eq!(to_sci_string(&rat(22, 7), 4), "3.142e0");
    }

    #[test]
    fn field_axioms_hold_on_small_fractions() {
        use proptest::prelude::*;
        let small = || (-50i64..50, 1i64..30).prop_map(|(n, d)| rat(n, d));
        proptest!(|(a in small(), b in small(), c in small())| {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !b.is_zero() {
                prop_assert_eq!(checked_div(&(&a * &b), &b).unwrap(), a.clone());
            }
        });
    }
}
