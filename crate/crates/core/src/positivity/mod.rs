//! Sign certificates for rational functions on integer rays `m >= m0`, and
//! the telescoping tail bounds and second-order brackets built on them.
//!
//! A polynomial is certified on `[s, inf)` when its Taylor shift by `s` has
//! coefficients of one sign and a nonzero constant term. Numerator and
//! denominator are certified separately; integers between `m0` and the
//! witness shift are checked by exact evaluation.

mod bracket;
pub mod lemmas;

pub use bracket::{certify_second_order_bracket, BracketReport, DCheck};
pub use lemmas::{certify_lemma, LemmaClaim, LemmaId, LemmaReport, LemmaStatus};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::cmp::Ordering;
use std::fmt;
use thiserror::Error;

use crate::exact::rational::{ceil_to_bigint, from_bigint, to_fraction_string};
use crate::exact::{Polynomial, Rational, RationalFunction};
use crate::solver::SolverError;

/// Shift steps tried beyond `m0` before giving up.
pub const SHIFT_CAP: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositivityError {
    #[error("pole at m={0} on the ray")]
    Pole(BigInt),
    #[error(transparent)]
    Solver(SolverError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    ProvenPositive,
    ProvenNegative,
    Unknown,
}

impl Verdict {
    fn from_sign(s: Ordering) -> Self {
        match s {
            Ordering::Greater => Verdict::ProvenPositive,
            Ordering::Less => Verdict::ProvenNegative,
            Ordering::Equal => Verdict::Unknown,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ProvenPositive => "ProvenPositive",
            Verdict::ProvenNegative => "ProvenNegative",
            Verdict::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCertificate {
    pub subject: RationalFunction,
    pub ray_start: Rational,
    pub verdict: Verdict,
    /// For a proven verdict, every coefficient of numerator and denominator
    /// shifted to `m = witness_shift + t` has a fixed sign. For `Unknown`, the
    /// last shift tried.
    pub witness_shift: Rational,
    /// Integers in `[ray_start, witness_shift)` evaluated directly.
    pub checked_prefix: Vec<BigInt>,
}

impl SignCertificate {
    pub fn is_proven(&self) -> bool {
        self.verdict != Verdict::Unknown
    }

    /// sha256 of the canonical (reduced, monic-denominator) rendering.
    pub fn subject_hash(&self) -> String {
        let text = format!("{}|{}", self.subject.num(), self.subject.den());
        Sha256::digest(text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject_hash": self.subject_hash(),
            "m0": to_fraction_string(&self.ray_start),
            "verdict": self.verdict.as_str(),
            "witness_shift": to_fraction_string(&self.witness_shift),
            "prefix_points": self.checked_prefix.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Coefficients all `>= 0` or all `<= 0` with a nonzero constant term.
fn uniform_sign(a: &[BigInt]) -> Option<Ordering> {
    let s = a.first()?.sign();
    let ord = match s {
        num_bigint::Sign::Plus => Ordering::Greater,
        num_bigint::Sign::Minus => Ordering::Less,
        num_bigint::Sign::NoSign => return None,
    };
    let ok = a.iter().all(|c| match ord {
        Ordering::Greater => !c.is_negative(),
        _ => !c.is_positive(),
    });
    ok.then_some(ord)
}

/// `a(t) -> a(t + 1)` in place.
fn shift_by_one(a: &mut [BigInt]) {
    let n = a.len();
    for i in 0..n.saturating_sub(1) {
        for j in (i..n - 1).rev() {
            let (lo, hi) = a.split_at_mut(j + 1);
            lo[j] += &hi[0];
        }
    }
}

/// Smallest `j <= cap` such that `p(m0 + j + t)` has uniformly signed
/// coefficients, with that sign.
fn ray_sign(p: &Polynomial, m0: &Rational, cap: usize) -> Option<(Ordering, usize)> {
    if p.is_zero() {
        return None;
    }
    let mut a = p.taylor_shift(m0).primitive_integer_coeffs();
    // primitive_integer_coeffs returns a positive multiple, so signs survive.
    for j in 0..=cap {
        if let Some(s) = uniform_sign(&a) {
            return Some((s, j));
        }
        shift_by_one(&mut a);
    }
    None
}

fn sign_of(x: &Rational) -> Ordering {
    x.cmp(&Rational::zero())
}

/// Certifies the sign of `f` at every integer `m >= m0`. The caller learns
/// `Unknown` rather than a wrong answer whenever the shift search fails or a
/// prefix point disagrees.
pub fn prove_sign_on_ray(f: &RationalFunction, m0: &Rational) -> Result<SignCertificate, PositivityError> {
    let mut cert = SignCertificate {
        subject: f.clone(),
        ray_start: m0.clone(),
        verdict: Verdict::Unknown,
        witness_shift: m0.clone(),
        checked_prefix: Vec::new(),
    };
    let first = ceil_to_bigint(m0);
    let num = ray_sign(f.num(), m0, SHIFT_CAP);
    let den = ray_sign(f.den(), m0, SHIFT_CAP);
    let (sign, steps) = match (num, den) {
        (Some((sn, jn)), Some((sd, jd))) => {
            let s = if sn == sd { Ordering::Greater } else { Ordering::Less };
            (Some(s), jn.max(jd))
        }
        (_, den) => {
            // Still look for poles on the reachable part of the ray.
            let reach = den.map_or(SHIFT_CAP, |(_, j)| j);
            let end = m0 + Rational::from_integer(reach.into());
            let mut m = first.clone();
            while from_bigint(m.clone()) < end {
                if f.den().eval(&from_bigint(m.clone())).is_zero() {
                    return Err(PositivityError::Pole(m));
                }
                m += 1;
            }
            cert.witness_shift = end;
            return Ok(cert);
        }
    };
    let sign = sign.unwrap();
    cert.witness_shift = m0 + Rational::from_integer(steps.into());
    let mut m = first;
    let mut agree = true;
    while from_bigint(m.clone()) < cert.witness_shift {
        let x = from_bigint(m.clone());
        let d = f.den().eval(&x);
        if d.is_zero() {
            return Err(PositivityError::Pole(m));
        }
        if sign_of(&(f.num().eval(&x) * d.signum())) != sign {
            agree = false;
        }
        cert.checked_prefix.push(m.clone());
        m += 1;
    }
    if agree {
        cert.verdict = Verdict::from_sign(sign);
    }
    Ok(cert)
}

/// Bounds `q^-n u(n) < sum_{m>=n} 1/((m+c)^p q^m) < q^-n v(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailBoundPair {
    pub u: RationalFunction,
    pub v: RationalFunction,
    pub power: u32,
    pub shift: Rational,
    pub q: Rational,
}

impl TailBoundPair {
    /// `1/(m+c)^p`.
    pub fn summand(&self) -> RationalFunction {
        RationalFunction::simple_fraction(Rational::one(), Rational::one(), self.shift.clone(), self.power)
            .expect("nonzero linear factor")
    }

    /// `w(m) - w(m+1)/q - 1/(m+c)^p`.
    pub fn telescoping_difference(&self, w: &RationalFunction) -> RationalFunction {
        let next = w.shift(&Rational::one()).scale(&self.q.recip());
        &(w - &next) - &self.summand()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailBoundReport {
    pub n0: i64,
    /// `u`-difference, required `ProvenNegative`.
    pub lower: SignCertificate,
    /// `v`-difference, required `ProvenPositive`.
    pub upper: SignCertificate,
    /// `u, v -> 0` at infinity.
    pub decays: bool,
}

impl TailBoundReport {
    pub fn certified(&self) -> bool {
        self.failing_side().is_none()
    }

    pub fn failing_side(&self) -> Option<&'static str> {
        if self.lower.verdict != Verdict::ProvenNegative {
            Some("lower (u)")
        } else if self.upper.verdict != Verdict::ProvenPositive {
            Some("upper (v)")
        } else if !self.decays {
            Some("decay of u, v")
        } else {
            None
        }
    }
}

fn decays(w: &RationalFunction) -> bool {
    w.is_zero() || w.degree().is_ok_and(|d| d < 0)
}

pub fn certify_tail_bound(pair: &TailBoundPair, n0: i64) -> Result<TailBoundReport, PositivityError> {
    let m0 = Rational::from_integer(n0.into());
    Ok(TailBoundReport {
        n0,
        lower: prove_sign_on_ray(&pair.telescoping_difference(&pair.u), &m0)?,
        upper: prove_sign_on_ray(&pair.telescoping_difference(&pair.v), &m0)?,
        decays: decays(&pair.u) && decays(&pair.v),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn shifted_linear() {
        let f = RationalFunction::from_poly(Polynomial::from_ints(&[-4, 1]));
        let c = prove_sign_on_ray(&f, &int(5)).unwrap();
        assert_eq!(c.verdict, Verdict::ProvenPositive);
        assert_eq!(c.witness_shift, int(5));
        assert!(c.checked_prefix.is_empty());
    }

    #[test]
    fn prefix_is_evaluated() {
        // (m - 5/2)^2 + 1/100 > 0, but the shifted coefficients only turn
        // nonnegative at s = 3.
        let p = &Polynomial::linear(int(1), rat(-5, 2)).pow(2) + &Polynomial::constant(rat(1, 100));
        let c = prove_sign_on_ray(&RationalFunction::from_poly(p), &int(0)).unwrap();
        assert_eq!(c.verdict, Verdict::ProvenPositive);
        assert_eq!(c.witness_shift, int(3));
        assert_eq!(c.checked_prefix, vec![0.into(), 1.into(), 2.into()]);
    }

    #[test]
    fn sign_change_is_unknown() {
        // (m - 7/2): negative at 3, positive from 4.
        let f = RationalFunction::from_poly(Polynomial::linear(int(1), rat(-7, 2)));
        assert_eq!(prove_sign_on_ray(&f, &int(1)).unwrap().verdict, Verdict::Unknown);
        assert_eq!(prove_sign_on_ray(&f, &int(4)).unwrap().verdict, Verdict::ProvenPositive);
    }

    #[test]
    fn pole_on_ray() {
        let f = RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[-6, 1])).unwrap();
        assert_eq!(prove_sign_on_ray(&f, &int(2)), Err(PositivityError::Pole(6.into())));
        assert!(prove_sign_on_ray(&f, &int(7)).unwrap().is_proven());
    }

    #[test]
    fn negative_denominator() {
        // 1 / (3 - m) < 0 on m >= 4.
        let f = RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[3, -1])).unwrap();
        assert_eq!(prove_sign_on_ray(&f, &int(4)).unwrap().verdict, Verdict::ProvenNegative);
    }

    #[test]
    fn zero_is_unknown() {
        let c = prove_sign_on_ray(&RationalFunction::zero(), &int(1)).unwrap();
        assert_eq!(c.verdict, Verdict::Unknown);
    }
}
