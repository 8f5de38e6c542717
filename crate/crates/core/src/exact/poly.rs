//! Dense univariate polynomials over the rationals, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::{denominator_lcm, from_bigint, int, Rational};
use super::ExactError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `m`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c * m^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `a*m + c`.
    pub fn linear(a: Rational, c: Rational) -> Self {
        Self::new(vec![c, a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `q(t) = p(t + s)`, by repeated synthetic division.
    pub fn taylor_shift(&self, s: &Rational) -> Self {
        if s.is_zero() || self.coeffs.len() < 2 {
            return self.clone();
        }
        let n = self.coeffs.len();
        if s.is_integer() && self.is_integral() {
            let s = s.numer();
            let mut a: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer().clone()).collect();
            for i in 0..n - 1 {
                for j in (i..n - 1).rev() {
                    let carry = &a[j + 1] * s;
                    a[j] += carry;
                }
            }
            return Self::new(a.into_iter().map(Rational::from_integer).collect());
        }
        let mut a = self.coeffs.clone();
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let carry = &a[j + 1] * s;
                a[j] += carry;
            }
        }
        Self::new(a)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), ExactError> {
        let dd = divisor.degree().ok_or(ExactError::DivisionByZero)?;
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Monic greatest common divisor; zero only if both inputs are zero.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        if !self.is_zero() && !other.is_zero() {
            if let Some(g) = super::modular::gcd(self, other) {
                return g;
            }
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = denominator_lcm(&self.coeffs);
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * from_bigint(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }

    /// Upper bound on the absolute value of every complex root (Fujiwara).
    /// `None` for constants.
    pub fn root_bound(&self) -> Option<BigInt> {
        let n = self.degree()?;
        if n == 0 {
            return None;
        }
        let lc = self.leading().unwrap().abs();
        let mut best = BigInt::zero();
        for i in 1..=n {
            let ratio = self.coeffs[n - i].abs() / &lc;
            if ratio.is_zero() {
                continue;
            }
            let ceil = ratio.ceil().to_integer();
            let mut r = num_integer::Roots::nth_root(&ceil, i as u32);
            if num_traits::pow(r.clone(), i) < ceil {
                r += 1;
            }
            best = best.max(r);
        }
        Some(best * 2 + 1)
    }

    /// Smallest integer root `>= start`, if any.
    pub fn first_integer_root_from(&self, start: &BigInt) -> Option<BigInt> {
        let bound = self.root_bound()?;
        let mut m = start.clone();
        while m <= bound {
            if self.eval(&from_bigint(m.clone())).is_zero() {
                return Some(m);
            }
            m += 1;
        }
        None
    }
}

impl fmt::Display for Polynomial {
    /// Highest degree first, in the indeterminate `m`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mag_s = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            match i {
                0 => write!(f, "{mag_s}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_s}*")?;
                    }
                    if i == 1 {
                        write!(f, "m")?;
                    } else {
                        write!(f, "m^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn combine(a: &Polynomial, b: &Polynomial, sub: bool) -> Polynomial {
    let n = a.coeffs.len().max(b.coeffs.len());
    if a.is_integral() && b.is_integral() {
        let get = |p: &Polynomial, i: usize| p.coeffs.get(i).map(|c| c.numer().clone()).unwrap_or_default();
        return Polynomial::new(
            (0..n)
                .map(|i| Rational::from_integer(if sub { get(a, i) - get(b, i) } else { get(a, i) + get(b, i) }))
                .collect(),
        );
    }
    Polynomial::new((0..n).map(|i| if sub { a.coeff(i) - b.coeff(i) } else { a.coeff(i) + b.coeff(i) }).collect())
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        combine(self, rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        combine(self, rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        if self.is_integral() && rhs.is_integral() {
            // `Ratio` arithmetic reduces by a gcd on every operation, which
            // dominates large integer products.
            let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    out[i + j] += a.numer() * b.numer();
                }
            }
            return Polynomial::new(out.into_iter().map(Rational::from_integer).collect());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn shift_of_square() {
        let p = Polynomial::from_ints(&[0, 0, 1]);
        assert_eq!(p.taylor_shift(&int(1)), Polynomial::from_ints(&[1, 2, 1]));
    }

    #[test]
    fn zero_shift_is_identity() {
        let p = Polynomial::x();
        assert_eq!(p.taylor_shift(&Rational::zero()), p);
    }

    #[test]
    fn shift_matches_pointwise_evaluation() {
        // p(m) = m^3 - m, s = -1
        let p = Polynomial::from_ints(&[0, -1, 0, 1]);
        let s = int(-1);
        let q = p.taylor_shift(&s);
        for t in 0..=3 {
            let t = int(t);
            assert_eq!(q.eval(&t), p.eval(&(&t + &s)));
        }
        // (t-1)^3 - (t-1) = t^3 - 3t^2 + 2t
        assert_eq!(q, Polynomial::from_ints(&[0, 2, -3, 1]));
    }

    #[test]
    fn division_and_gcd() {
        // (m+1)(m-2) and (m+1)(m+3)
        let a = Polynomial::from_ints(&[-2, -1, 1]);
        let b = Polynomial::from_ints(&[3, 4, 1]);
        assert_eq!(a.gcd(&b), Polynomial::from_ints(&[1, 1]));
        let (q, r) = b.div_rem(&Polynomial::from_ints(&[1, 1])).unwrap();
        assert_eq!(q, Polynomial::from_ints(&[3, 1]));
        assert!(r.is_zero());
        assert!(a.div_rem(&Polynomial::zero()).is_err());
    }

    #[test]
    fn integer_roots_on_a_ray() {
        // (8m+4)(m-7)
        let p = &Polynomial::from_ints(&[4, 8]) * &Polynomial::from_ints(&[-7, 1]);
        assert_eq!(p.first_integer_root_from(&BigInt::from(0)), Some(BigInt::from(7)));
        assert_eq!(p.first_integer_root_from(&BigInt::from(8)), None);
        let q = Polynomial::linear(int(24), int(23)).pow(2);
        assert_eq!(q.first_integer_root_from(&BigInt::from(0)), None);
    }

    #[test]
    fn display_reads_naturally() {
        let p = Polynomial::new(vec![rat(-3, 32), rat(7, 8), int(1)]);
        assert_eq!(p.to_string(), "m^2 + 7/8*m - 3/32");
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((-9i64..9, 1i64..5), 0..7)
            .prop_map(|v| Polynomial::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn shift_round_trips(p in small_poly(), n in -20i64..20, d in 1i64..7) {
            let s = rat(n, d);
            prop_assert_eq!(p.taylor_shift(&s).taylor_shift(&-&s), p);
        }

        #[test]
        fn shift_agrees_with_evaluation(p in small_poly(), n in -9i64..9, t in -9i64..9) {
            let s = int(n);
            let t = int(t);
            prop_assert_eq!(p.taylor_shift(&s).eval(&t), p.eval(&(&t + &s)));
        }
    }
}
