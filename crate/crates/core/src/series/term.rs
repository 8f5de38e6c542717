use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::rational::{factorial, from_bigint, int, pow};
use crate::exact::{Polynomial, Rational, RationalFunction};

use super::SeriesError;

/// One factorial factor `(coeff*m + offset)!`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorialFactor {
    pub coeff: u32,
    pub offset: i64,
}

impl FactorialFactor {
    pub fn new(coeff: u32, offset: i64) -> Self {
        FactorialFactor { coeff, offset }
    }

    fn argument(&self, m: u64) -> i64 {
        self.coeff as i64 * m as i64 + self.offset
    }

    /// `prod_{s=1}^{coeff} (coeff*m + offset + s)`, the ratio `(arg(m+1))! / (arg(m))!`.
    fn step_ratio(&self) -> Polynomial {
        (1..=self.coeff as i64).fold(Polynomial::one(), |acc, s| {
            &acc * &Polynomial::linear(int(self.coeff as i64), int(self.offset + s))
        })
    }
}

/// A proper BBP-type term `t_m = R(m) * prod (a_i m + c_i)! / prod (b_j m + d_j)! / q^m`,
/// summed from `start_index` and multiplied by `prefactor`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BBPTerm {
    pub name: String,
    pub prefactor: Rational,
    pub r: RationalFunction,
    pub base_q: Rational,
    /// Geometric-free series: `base_q` is 1 and the difference equation is
    /// `y(m) - y(m+1) - R(m) = 0`.
    pub q_is_one: bool,
    pub num_factorials: Vec<FactorialFactor>,
    pub den_factorials: Vec<FactorialFactor>,
    pub start_index: u64,
}

impl BBPTerm {
    /// Checks the invariants and returns the term unchanged on success.
    pub fn validated(self) -> Result<Self, SeriesError> {
        if self.base_q <= Rational::zero() {
            return Err(SeriesError::BaseNotPositive);
        }
        if self.q_is_one {
            if !self.base_q.is_one() {
                return Err(SeriesError::QIsOneMismatch);
            }
        } else if self.base_q.is_one() {
            return Err(SeriesError::BaseIsOne);
        }
        if self.r.is_zero() {
            return Err(SeriesError::ZeroRationalPart);
        }
        let start = BigInt::from(self.start_index);
        if let Some(m) = self.r.den().first_integer_root_from(&start) {
            return Err(SeriesError::Pole(m));
        }
        for f in self.num_factorials.iter().chain(&self.den_factorials) {
            if f.coeff == 0 {
                return Err(SeriesError::BadFactorial("coefficient must be positive".into()));
            }
            if f.argument(self.start_index) < 0 {
                return Err(SeriesError::BadFactorial(format!(
                    "({}m{:+})! is negative at m={}",
                    f.coeff, f.offset, self.start_index
                )));
            }
        }
        Ok(self)
    }

    pub fn has_factorials(&self) -> bool {
        !self.num_factorials.is_empty() || !self.den_factorials.is_empty()
    }

    /// `F(m+1) / (q F(m))` for the factorial-and-base part `F(m)/q^m`.
    /// `R` is deliberately excluded: it is the inhomogeneous term of the
    /// difference equation `y(m) - kernel(m) y(m+1) - R(m) = 0`.
    pub fn kernel(&self) -> RationalFunction {
        let num = self
            .num_factorials
            .iter()
            .fold(Polynomial::one(), |acc, f| &acc * &f.step_ratio());
        let den = self
            .den_factorials
            .iter()
            .fold(Polynomial::one(), |acc, f| &acc * &f.step_ratio());
        RationalFunction::new(num, den.scale(&self.base_q)).expect("nonzero kernel denominator")
    }

    /// `F(m) / q^m`, the factor multiplying `R(m)` in `t_m`.
    pub fn weight(&self, m: u64) -> Rational {
        let fact = |fs: &[FactorialFactor]| {
            fs.iter().fold(BigInt::one(), |acc, f| {
                acc * factorial(f.argument(m).max(0) as u64)
            })
        };
        let ratio = Rational::new(fact(&self.num_factorials), fact(&self.den_factorials));
        ratio * pow(&self.base_q, -(m as i64))
    }

    /// `t_m` without the prefactor.
    pub fn term_value(&self, m: u64) -> Result<Rational, SeriesError> {
        if m < self.start_index {
            return Err(SeriesError::BelowStart { m, start: self.start_index });
        }
        let r = self
            .r
            .eval(&from_bigint(BigInt::from(m)))
            .map_err(|_| SeriesError::Pole(BigInt::from(m)))?;
        Ok(r * self.weight(m))
    }

    /// Iterator over `(m, weight(m))` from `start_index`, advanced through the
    /// kernel so factorials are never recomputed.
    pub fn weights(&self) -> Weights {
        Weights {
            kernel: self.kernel(),
            m: self.start_index,
            current: self.weight(self.start_index),
        }
    }
}

pub struct Weights {
    kernel: RationalFunction,
    m: u64,
    current: Rational,
}

impl Iterator for Weights {
    type Item = (u64, Rational);

    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.m, self.current.clone());
        let k = self
            .kernel
            .eval(&int(self.m as i64))
            .expect("kernel has no poles on the summation range");
        self.current *= k;
        self.m += 1;
        Some(out)
    }
}
