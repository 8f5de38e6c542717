//! Reduced rational functions `num/den` with a monic denominator.

use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Polynomial;
use super::rational::Rational;
use super::ExactError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Reduces by the polynomial gcd and normalises the denominator to be monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.div_rem(&g)?.0, den.div_rem(&g)?.0)
        };
        let lc = den.leading().unwrap().recip();
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// `1 / m^k`.
    pub fn inv_power(k: usize) -> Self {
        RationalFunction {
            num: Polynomial::one(),
            den: Polynomial::monomial(Rational::one(), k),
        }
    }

    /// `coef / (a*m + c)^p`.
    pub fn simple_fraction(coef: Rational, a: Rational, c: Rational, p: u32) -> Result<Self, ExactError> {
        Self::new(
            Polynomial::constant(coef),
            Polynomial::linear(a, c).pow(p),
        )
    }

    /// Sum over a common denominator with a single final reduction.
    pub fn sum_of_simple_fractions(
        terms: &[(Rational, Rational, Rational, u32)],
    ) -> Result<Self, ExactError> {
        let dens: Vec<Polynomial> = terms
            .iter()
            .map(|(_, a, c, p)| Polynomial::linear(a.clone(), c.clone()).pow(*p))
            .collect();
        if dens.iter().any(Polynomial::is_zero) {
            return Err(ExactError::ZeroDenominator);
        }
        let mut num = Polynomial::zero();
        for (i, (coef, ..)) in terms.iter().enumerate() {
            let mut t = Polynomial::constant(coef.clone());
            for (j, d) in dens.iter().enumerate() {
                if i != j {
                    t = &t * d;
                }
            }
            num = &num + &t;
        }
        let den = dens.iter().fold(Polynomial::one(), |acc, d| &acc * d);
        Self::new(num, den)
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// `deg(num) - deg(den)`; undefined for the zero function.
    pub fn degree(&self) -> Result<i64, ExactError> {
        let n = self.num.degree().ok_or(ExactError::ZeroFunction)?;
        Ok(n as i64 - self.den.degree().unwrap() as i64)
    }

    /// Ratio of leading coefficients (the coefficient of `m^degree`).
    pub fn leading_coefficient(&self) -> Option<Rational> {
        Some(self.num.leading()? / self.den.leading().unwrap())
    }

    /// `lim_{m -> inf}`, or `None` when the function grows.
    pub fn limit_at_infinity(&self) -> Option<Rational> {
        match self.degree() {
            Err(_) => Some(Rational::zero()),
            Ok(d) if d < 0 => Some(Rational::zero()),
            Ok(0) => self.leading_coefficient(),
            Ok(_) => None,
        }
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, ExactError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ExactError::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    /// `r(m + s)`.
    pub fn shift(&self, s: &Rational) -> Self {
        RationalFunction {
            num: self.num.taylor_shift(s),
            den: self.den.taylor_shift(s),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn degree_examples() {
        let r = RationalFunction::from_poly(Polynomial::from_ints(&[5, 42]));
        assert_eq!(r.degree().unwrap(), 1);
        assert_eq!(RationalFunction::constant(rat(7, 3)).degree().unwrap(), 0);
        let r = RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(r.degree().unwrap(), -2);
        assert_eq!(RationalFunction::zero().degree(), Err(ExactError::ZeroFunction));
    }

    #[test]
    fn reduces_to_monic_denominator() {
        // (2m+2) / (4m^2 - 4) = (1/2) / (m - 1)
        let r = RationalFunction::new(
            Polynomial::from_ints(&[2, 2]),
            Polynomial::from_ints(&[-4, 0, 4]),
        )
        .unwrap();
        assert_eq!(r.num(), &Polynomial::constant(rat(1, 2)));
        assert_eq!(r.den(), &Polynomial::from_ints(&[-1, 1]));
    }

    #[test]
    fn pole_is_reported() {
        let r = RationalFunction::simple_fraction(int(1), int(1), int(0), 1).unwrap();
        assert!(matches!(r.eval(&int(0)), Err(ExactError::Pole(_))));
        assert_eq!(r.eval(&int(4)).unwrap(), rat(1, 4));
    }

    fn small_rf() -> impl Strategy<Value = RationalFunction> {
        let poly = |n| {
            proptest::collection::vec(-6i64..6, 1..n)
                .prop_map(|v| Polynomial::from_ints(&v))
        };
        (poly(5), poly(5))
            .prop_filter("nonzero", |(n, d)| !n.is_zero() && !d.is_zero())
            .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn degree_is_additive(a in small_rf(), b in small_rf()) {
            let prod = &a * &b;
            prop_assert_eq!(prod.degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
        }

        #[test]
        fn sum_of_fractions_matches_pairwise(c1 in -5i64..5, c2 in 1i64..5, k in 1i64..4) {
            let terms = vec![
                (int(c1), int(k), int(1), 2),
                (int(c2), int(k), int(3), 1),
            ];
            let a = RationalFunction::sum_of_simple_fractions(&terms).unwrap();
            let b = &RationalFunction::simple_fraction(int(c1), int(k), int(1), 2).unwrap()
                + &RationalFunction::simple_fraction(int(c2), int(k), int(3), 1).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
