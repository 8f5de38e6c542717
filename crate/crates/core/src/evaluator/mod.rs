//! Exact partial sums, correction evaluation, rigorous enclosures of the
//! series value and the correction error `E_k(n)`.
//!
//! The series value `alpha` is never taken from outside: it is enclosed by a
//! partial sum plus a geometric tail majorant whose ratio bound is certified
//! with [`crate::positivity`].

mod bounds;
mod digits;
mod rates;

pub use bounds::{theorem_bounds_check, theorem_bounds_check_with, BoundCheck, BoundOutcome, BoundsReport, TheoremFixture};
pub use digits::{digits, DigitString};
pub use rates::{rate_fixture_check, RateFixture, RateFixtureReport};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use std::cmp::Ordering;
use thiserror::Error;

use crate::exact::rational::{from_bigint, int, pow, rat, to_fraction_string};
use crate::exact::{Rational, RationalFunction};
use crate::positivity::{prove_sign_on_ray, PositivityError, Verdict};
use crate::series::{BBPTerm, SeriesError};
use crate::solver::{CorrectionCF, HeadKind, ResidualInfo, SolverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// Level 0 is the head.
    #[error("pole at n={n}: level {level} denominator vanishes")]
    Pole { level: usize, n: Rational },
    #[error("cannot certify tail at N={0}")]
    Tail(u64),
    #[error("|lim kernel| = {0} >= 1: no finite rate limit")]
    NoRateLimit(Rational),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Positivity(#[from] PositivityError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "enclosure bounds out of order");
        Enclosure { lo, hi }
    }

    /// The interval spanned by two points in either order.
    pub fn spanning(a: Rational, b: Rational) -> Self {
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    pub fn point(x: Rational) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn shift(&self, c: &Rational) -> Self {
        Enclosure {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Enclosure::spanning(&self.lo * c, &self.hi * c)
    }

    pub fn add(&self, other: &Enclosure) -> Self {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn hull_with(&self, x: &Rational) -> Self {
        Enclosure {
            lo: self.lo.clone().min(x.clone()),
            hi: self.hi.clone().max(x.clone()),
        }
    }

    /// `Greater`/`Less` when the whole interval is strictly on one side of 0.
    pub fn strict_sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    /// `{|x| : x in self}`.
    pub fn abs(&self) -> Self {
        match self.strict_sign() {
            Some(Ordering::Greater) => self.clone(),
            Some(Ordering::Less) => self.scale(&int(-1)),
            _ => Enclosure {
                lo: Rational::zero(),
                hi: self.lo.abs().max(self.hi.abs()),
            },
        }
    }
}

fn n_rat(n: u64) -> Rational {
    from_bigint(BigInt::from(n))
}

/// `sum_{m=start}^{n-1} R(m) F(m)/q^m`, prefactor excluded; zero for
/// `n <= start`.
pub fn partial_sum(term: &BBPTerm, n: u64) -> Rational {
    let mut acc = Rational::zero();
    for (m, w) in term.weights().take(n.saturating_sub(term.start_index) as usize) {
        let r = term.r.eval(&n_rat(m)).expect("validated terms have no poles on the range");
        acc += r * w;
    }
    acc
}

/// Bottom-up evaluation of the nested correction at `n`.
pub fn mc_eval(cf: &CorrectionCF, n: &Rational) -> Result<Rational, EvalError> {
    let mut tail = Rational::zero();
    for (j, level) in cf.levels.iter().enumerate().rev() {
        let d = n + &level.b + &tail;
        if d.is_zero() {
            return Err(EvalError::Pole { level: j + 1, n: n.clone() });
        }
        tail = &level.a / d;
    }
    let head = cf.head_poly.eval(n);
    match cf.head_kind {
        HeadKind::ReciprocalHead => {
            let d = head + tail;
            if d.is_zero() {
                return Err(EvalError::Pole { level: 0, n: n.clone() });
            }
            Ok(&cf.lambda0 / d)
        }
        HeadKind::PolynomialHead => Ok(head + tail),
    }
}

/// `kernel(m) R(m+1) / R(m)`, the ratio of consecutive terms.
fn term_ratio(term: &BBPTerm) -> RationalFunction {
    let shifted = term.r.shift(&Rational::one());
    let ratio = shifted.checked_div(&term.r).expect("R is nonzero");
    &term.kernel() * &ratio
}

/// Candidate ratio bounds `rbar`, most ambitious first.
fn ratio_candidates(limit: &Rational, at_n: &Rational) -> Vec<Rational> {
    let mut out = vec![limit.clone()];
    if at_n > limit {
        out.push(at_n.clone());
    }
    let gap = Rational::one() - limit;
    for j in 1..=8 {
        out.push(limit + &gap / pow(&int(2), j));
    }
    out
}

/// Encloses `prefactor * sum_{m>=start} t_m` by the exact sum through
/// `m = N` plus a geometric majorant `t_N rbar/(1-rbar)` of the rest, with
/// the sign of `R` and `t_{m+1}/t_m <= rbar < 1` certified on `m >= N`.
pub fn alpha_enclosure(term: &BBPTerm, n_cut: u64) -> Result<Enclosure, EvalError> {
    let n_cut = n_cut.max(term.start_index);
    let start = n_rat(n_cut);
    let sign = match prove_sign_on_ray(&term.r, &start)?.verdict {
        Verdict::Unknown => return Err(EvalError::Tail(n_cut)),
        v => v,
    };
    let ratio = term_ratio(term);
    let limit = match ratio.limit_at_infinity() {
        Some(l) if l < Rational::one() => l,
        _ => return Err(EvalError::Tail(n_cut)),
    };
    let at_n = ratio.eval(&start).map_err(|_| EvalError::Tail(n_cut))?;
    let mut rbar = None;
    for cand in ratio_candidates(&limit, &at_n) {
        if cand >= Rational::one() {
            continue;
        }
        let slack = &RationalFunction::constant(cand.clone()) - &ratio;
        if prove_sign_on_ray(&slack, &start)?.verdict == Verdict::ProvenPositive {
            rbar = Some(cand);
            break;
        }
    }
    let rbar = rbar.ok_or(EvalError::Tail(n_cut))?;
    let t_n = term.term_value(n_cut)?;
    let majorant = &t_n / (Rational::one() - &rbar);
    let tail = match sign {
        Verdict::ProvenPositive => Enclosure::new(t_n, majorant),
        _ => Enclosure::new(majorant, t_n),
    };
    Ok(tail.shift(&partial_sum(term, n_cut)).scale(&term.prefactor))
}

/// Reference cut `max(4n, n+60)` for enclosing `alpha` next to `E_k(n)`.
pub fn default_n_ref(n: u64) -> u64 {
    (4 * n).max(n + 60)
}

/// `prefactor (S(n) + F(n)/q^n MC(n))`, the corrected approximation.
pub fn corrected_value(term: &BBPTerm, cf: Option<&CorrectionCF>, n: u64) -> Result<Rational, EvalError> {
    let mut v = partial_sum(term, n);
    if let Some(cf) = cf {
        v += term.weight(n) * mc_eval(cf, &n_rat(n))?;
    }
    Ok(v * &term.prefactor)
}

/// `E_k(n) = alpha - prefactor S(n) - prefactor F(n)/q^n MC_k(n)` with
/// `alpha` enclosed at `n_ref`.
pub fn error_term(term: &BBPTerm, cf: &CorrectionCF, n: u64, n_ref: u64) -> Result<Enclosure, EvalError> {
    if n < term.start_index {
        return Err(SeriesError::BelowStart { m: n, start: term.start_index }.into());
    }
    let approx = corrected_value(term, Some(cf), n)?;
    Ok(alpha_enclosure(term, n_ref)?.shift(&-approx))
}

/// `n^K0 q^n / F(n)`, turning `E_k(n)` into the quantity with a finite limit.
pub fn rate_scale(term: &BBPTerm, k0: i64, n: u64) -> Rational {
    pow(&n_rat(n), k0) / term.weight(n)
}

/// `prefactor C_k / (1 - lim kernel)`.
pub fn rate_limit_constant(term: &BBPTerm, info: &ResidualInfo) -> Result<Rational, EvalError> {
    let r = term.kernel().limit_at_infinity().unwrap_or_else(Rational::one);
    if r.abs() >= Rational::one() {
        return Err(EvalError::NoRateLimit(r));
    }
    Ok(&term.prefactor * &info.ck / (Rational::one() - r))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErrorReport {
    pub fixture: String,
    pub n: u64,
    pub k: usize,
    pub e: Enclosure,
    pub scaled: Enclosure,
    pub expected_limit: Rational,
    /// `|midpoint(scaled)/expected - 1|`.
    pub deviation: Rational,
    pub pass: bool,
}

impl ErrorReport {
    pub fn to_json(&self) -> Value {
        json!({
            "fixture": self.fixture,
            "k": self.k,
            "n": self.n,
            "E_lo": to_fraction_string(&self.e.lo),
            "E_hi": to_fraction_string(&self.e.hi),
            "scaled_lo": to_fraction_string(&self.scaled.lo),
            "scaled_hi": to_fraction_string(&self.scaled.hi),
            "expected": to_fraction_string(&self.expected_limit),
            "pass": self.pass,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateCheck {
    pub reports: Vec<ErrorReport>,
    /// `|scaled - expected|` enclosed at each n.
    pub distances: Vec<Enclosure>,
    /// Each distance lies strictly below the previous one.
    pub monotone: bool,
}

impl RateCheck {
    pub fn passed(&self) -> bool {
        self.monotone && self.reports.iter().all(|r| r.pass)
    }
}

/// Runs `f` over `items` on scoped threads, keeping input order.
pub(crate) fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    std::thread::scope(|s| {
        let handles: Vec<_> = items.iter().map(|x| s.spawn(|| f(x))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Scaled error against the expected limit at each `n`. The relative error
/// of the limit is `O(1/n)`, so `rel_tol` must grow as `n` shrinks.
pub fn rate_check(
    term: &BBPTerm,
    cf: &CorrectionCF,
    info: &ResidualInfo,
    n_list: &[u64],
    rel_tol: &Rational,
) -> Result<RateCheck, EvalError> {
    let expected = rate_limit_constant(term, info)?;
    let results = par_map(n_list, |&n| -> Result<(ErrorReport, Enclosure), EvalError> {
        let e = error_term(term, cf, n, default_n_ref(n))?;
        let scaled = e.scale(&rate_scale(term, info.k0, n));
        let deviation = (scaled.midpoint() / &expected - Rational::one()).abs();
        let distance = scaled.shift(&-expected.clone()).abs();
        Ok((
            ErrorReport {
                fixture: term.name.clone(),
                n,
                k: cf.depth(),
                e,
                scaled,
                expected_limit: expected.clone(),
                pass: &deviation <= rel_tol,
                deviation,
            },
            distance,
        ))
    });
    let mut out = RateCheck {
        reports: Vec::new(),
        distances: Vec::new(),
        monotone: true,
    };
    for r in results {
        let (report, distance) = r?;
        if let Some(prev) = out.distances.last() {
            out.monotone &= distance.hi < prev.lo;
        }
        out.reports.push(report);
        out.distances.push(distance);
    }
    Ok(out)
}

/// Default relative tolerance for rate checks at `n = 50`.
pub fn default_rel_tol() -> Rational {
    rat(1, 10)
}
