//! Truncated expansions in powers of `1/m` at `m = infinity`.
//!
//! A series is `sum_i c_i / m^(e + i)`. Its precision is absolute: a series
//! known "through exponent P" has an error of order `1/m^(P+1)`. Every
//! combinator derives the result's precision from its inputs, so a value is
//! never reported beyond what was actually computed.

use num_traits::Zero;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Polynomial;
use super::rational::{int, pow, Rational};
use super::ratfunc::RationalFunction;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Precision {
    /// No truncation: the listed coefficients are the whole function.
    Exact,
    /// Known through `1/m^P`.
    Through(i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticSeries {
    leading_exponent: i64,
    coefficients: Vec<Rational>,
    precision: Precision,
}

impl AsymptoticSeries {
    fn normalized(mut e: i64, mut coeffs: Vec<Rational>, precision: Precision) -> Self {
        let strip = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..strip);
        e += strip as i64;
        match precision {
            Precision::Through(p) => {
                let keep = (p - e + 1).max(0) as usize;
                coeffs.truncate(keep);
                if coeffs.is_empty() {
                    // Known to vanish through p.
                    e = p + 1;
                }
            }
            Precision::Exact => {
                while coeffs.last().is_some_and(Zero::is_zero) {
                    coeffs.pop();
                }
                if coeffs.is_empty() {
                    e = 0;
                }
            }
        }
        AsymptoticSeries {
            leading_exponent: e,
            coefficients: coeffs,
            precision,
        }
    }

    pub fn new(leading_exponent: i64, coefficients: Vec<Rational>, precision: Precision) -> Self {
        Self::normalized(leading_exponent, coefficients, precision)
    }

    /// `c / m^e`, exactly.
    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::normalized(e, vec![c], Precision::Exact)
    }

    pub fn zero() -> Self {
        Self::normalized(0, Vec::new(), Precision::Exact)
    }

    pub fn leading_exponent(&self) -> i64 {
        self.leading_exponent
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn precision(&self) -> &Precision {
        &self.precision
    }

    /// Number of coefficient steps past the leading one that are reliable;
    /// `None` when exact.
    pub fn truncation_order(&self) -> Option<i64> {
        match self.precision {
            Precision::Exact => None,
            Precision::Through(p) => Some(p - self.leading_exponent),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coefficients.first()
    }

    /// Coefficient of `1/m^j`; `None` when `j` lies beyond the precision.
    pub fn coefficient_at(&self, j: i64) -> Option<Rational> {
        if let Precision::Through(p) = self.precision {
            if j > p {
                return None;
            }
        }
        let i = j - self.leading_exponent;
        if i < 0 {
            return Some(Rational::zero());
        }
        Some(
            self.coefficients
                .get(i as usize)
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    /// Absolute exponent through which the series is known (`i64::MAX` if exact).
    fn known_through(&self) -> i64 {
        match self.precision {
            Precision::Exact => i64::MAX,
            Precision::Through(p) => p,
        }
    }

    fn effective_leading(&self) -> i64 {
        if self.is_zero() {
            match self.precision {
                Precision::Exact => i64::MAX / 4,
                Precision::Through(p) => p + 1,
            }
        } else {
            self.leading_exponent
        }
    }

    /// Evaluates the truncated sum at a concrete `m`.
    pub fn eval(&self, m: &Rational) -> Rational {
        self.coefficients
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (i, c)| {
                acc + c * pow(m, -(self.leading_exponent + i as i64))
            })
    }

    fn combine_additive(&self, rhs: &Self, sign: i64) -> Self {
        let p = self.known_through().min(rhs.known_through());
        let precision = if p == i64::MAX {
            Precision::Exact
        } else {
            Precision::Through(p)
        };
        if self.is_zero() && rhs.is_zero() {
            return Self::normalized(0, Vec::new(), precision);
        }
        let e = self.effective_leading().min(rhs.effective_leading());
        let last = |s: &Self| s.leading_exponent + s.coefficients.len() as i64 - 1;
        let top = if p == i64::MAX { last(self).max(last(rhs)) } else { p };
        let coeffs = (e..=top)
            .map(|j| {
                let a = self.coefficient_at(j).unwrap_or_default();
                let b = rhs.coefficient_at(j).unwrap_or_default();
                a + b * int(sign)
            })
            .collect();
        Self::normalized(e, coeffs, precision)
    }

    fn product(&self, rhs: &Self) -> Self {
        let pa = self.known_through();
        let pb = rhs.known_through();
        let ea = self.effective_leading();
        let eb = rhs.effective_leading();
        let p = if pa == i64::MAX && pb == i64::MAX {
            i64::MAX
        } else {
            pa.saturating_add(eb).min(pb.saturating_add(ea))
        };
        let precision = if p == i64::MAX {
            Precision::Exact
        } else {
            Precision::Through(p)
        };
        if self.is_zero() || rhs.is_zero() {
            return Self::normalized(0, Vec::new(), precision);
        }
        let mut coeffs = vec![Rational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::normalized(ea + eb, coeffs, precision)
    }
}

/// Which combinator [`series_combine`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

pub fn series_combine(a: &AsymptoticSeries, b: &AsymptoticSeries, op: SeriesOp) -> AsymptoticSeries {
    match op {
        SeriesOp::Add => a.combine_additive(b, 1),
        SeriesOp::Sub => a.combine_additive(b, -1),
        SeriesOp::Mul => a.product(b),
    }
}

impl Add for &AsymptoticSeries {
    type Output = AsymptoticSeries;
    fn add(self, rhs: &AsymptoticSeries) -> AsymptoticSeries {
        series_combine(self, rhs, SeriesOp::Add)
    }
}

impl Sub for &AsymptoticSeries {
    type Output = AsymptoticSeries;
    fn sub(self, rhs: &AsymptoticSeries) -> AsymptoticSeries {
        series_combine(self, rhs, SeriesOp::Sub)
    }
}

impl Mul for &AsymptoticSeries {
    type Output = AsymptoticSeries;
    fn mul(self, rhs: &AsymptoticSeries) -> AsymptoticSeries {
        series_combine(self, rhs, SeriesOp::Mul)
    }
}

impl Neg for &AsymptoticSeries {
    type Output = AsymptoticSeries;
    fn neg(self) -> AsymptoticSeries {
        AsymptoticSeries {
            leading_exponent: self.leading_exponent,
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
            precision: self.precision.clone(),
        }
    }
}

/// First `count` coefficients of `num/den` in powers of `1/m`, given as raw
/// polynomials (no reduction needed). Returns the leading exponent
/// `deg(den) - deg(num)` and the coefficients.
pub fn expand_pair(num: &Polynomial, den: &Polynomial, count: usize) -> Option<(i64, Vec<Rational>)> {
    let p = num.degree()?;
    let q = den.degree().expect("nonzero denominator");
    // Substitute m = 1/x: num(m) = m^p * N(x) with N_i = num_{p-i}.
    let rev_num = |i: usize| if i <= p { num.coeffs()[p - i].clone() } else { Rational::zero() };
    let rev_den = |i: usize| if i <= q { den.coeffs()[q - i].clone() } else { Rational::zero() };
    let d0 = rev_den(0);
    let mut c: Vec<Rational> = Vec::with_capacity(count);
    for i in 0..count {
        let mut acc = rev_num(i);
        for j in 1..=i.min(q) {
            acc -= rev_den(j) * &c[i - j];
        }
        c.push(acc / &d0);
    }
    Some((q as i64 - p as i64, c))
}

/// Expansion of `r` with `order + 1` coefficients, i.e. error `O(1/m^(e+order+1))`.
/// Polynomials expand exactly; the zero function expands to the zero series.
pub fn expand_at_infinity(r: &RationalFunction, order: usize) -> AsymptoticSeries {
    if r.is_zero() {
        return AsymptoticSeries::zero();
    }
    if r.is_polynomial() {
        let lc = r.den().leading().unwrap();
        let p = r.num().degree().unwrap();
        let coeffs = r.num().coeffs().iter().rev().map(|c| c / lc).collect();
        return AsymptoticSeries::new(-(p as i64), coeffs, Precision::Exact);
    }
    let (e, coeffs) = expand_pair(r.num(), r.den(), order + 1).unwrap();
    AsymptoticSeries::new(e, coeffs, Precision::Through(e + order as i64))
}
