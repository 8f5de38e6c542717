use num_traits::{One, Zero};
use std::fmt;

use crate::exact::rational::to_fraction_string;
use crate::exact::{Polynomial, Rational, RationalFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeadKind {
    /// `MC_0` is a polynomial of degree `-kappa0`.
    PolynomialHead,
    /// `MC_0 = lambda0 / Phi(m)` with a monic `Phi` of degree `kappa0`.
    ReciprocalHead,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    pub a: Rational,
    pub b: Rational,
}

impl Level {
    pub fn new(a: Rational, b: Rational) -> Self {
        Level { a, b }
    }
}

/// `MC_k(m)`: a head followed by `k` nested levels `a_j / (m + b_j + ...)`.
///
/// For a reciprocal head the levels sit inside the denominator,
/// `lambda0 / (Phi(m) + a_1/(m + b_1 + ...))`; for a polynomial head they are
/// added, `P(m) + a_1/(m + b_1 + ...)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CorrectionCF {
    pub head_kind: HeadKind,
    pub head_poly: Polynomial,
    pub lambda0: Rational,
    pub kappa0: i64,
    pub levels: Vec<Level>,
}

impl CorrectionCF {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// The same correction cut down to its first `k` levels.
    pub fn truncated(&self, k: usize) -> CorrectionCF {
        CorrectionCF {
            levels: self.levels[..k.min(self.levels.len())].to_vec(),
            ..self.clone()
        }
    }

    /// Unreduced `(num, den)` of the nested form, built bottom-up. The
    /// denominator is the product of the partial denominators, which is what
    /// the solver wants: no gcd is ever needed.
    pub fn pair(&self) -> (Polynomial, Polynomial) {
        let mut num = Polynomial::zero();
        let mut den = Polynomial::one();
        for level in self.levels.iter().rev() {
            let partial = &(&Polynomial::linear(Rational::one(), level.b.clone()) * &den) + &num;
            num = den.scale(&level.a);
            den = partial;
        }
        match self.head_kind {
            HeadKind::ReciprocalHead => {
                let d = &(&self.head_poly * &den) + &num;
                (den.scale(&self.lambda0), d)
            }
            HeadKind::PolynomialHead => (&(&self.head_poly * &den) + &num, den),
        }
    }

    pub fn as_rational_function(&self) -> RationalFunction {
        let (num, den) = self.pair();
        RationalFunction::new(num, den).expect("partial denominators are nonzero polynomials")
    }

    /// `MC_0` as written with the leading coefficient in front: `lambda0/Phi`
    /// or the head polynomial itself.
    pub fn head_function(&self) -> RationalFunction {
        self.truncated(0).as_rational_function()
    }
}

impl fmt::Display for CorrectionCF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.head_kind {
            HeadKind::ReciprocalHead => {
                write!(f, "({})/({})", to_fraction_string(&self.lambda0), self.head_poly)?
            }
            HeadKind::PolynomialHead => write!(f, "{}", self.head_poly)?,
        }
        for l in &self.levels {
            let b = &l.b;
            let sign = if *b < Rational::zero() { "-" } else { "+" };
            let b_abs = if *b < Rational::zero() { -b.clone() } else { b.clone() };
            write!(f, " K[{}/(m {sign} {})]", to_fraction_string(&l.a), to_fraction_string(&b_abs))?;
        }
        Ok(())
    }
}
