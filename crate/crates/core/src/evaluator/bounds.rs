use serde_json::{json, Value};

use crate::exact::rational::{from_bigint, int, pow, rat, to_fraction_string};
use crate::exact::Rational;
use crate::series::catalog::{catalan_bbp, pi2_bbp, pi_bbp};
use crate::series::BBPTerm;
use crate::solver::{build_correction, CorrectionCF};

use super::{default_n_ref, error_term, par_map, Enclosure, EvalError};

/// Doublings of the reference cut tried on a straddle (up to 16x).
const MAX_DOUBLINGS: u32 = 4;

/// The three published double-sided inequalities for `E_k(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremFixture {
    /// pi, k = 9, n >= 88.
    Thm2,
    /// Catalan, k = 4, n >= 12.
    Thm4,
    /// pi^2, k = 3, n >= 15.
    Thm6,
}

impl TheoremFixture {
    pub const ALL: [TheoremFixture; 3] = [TheoremFixture::Thm2, TheoremFixture::Thm4, TheoremFixture::Thm6];

    pub fn id(self) -> &'static str {
        match self {
            TheoremFixture::Thm2 => "thm2",
            TheoremFixture::Thm4 => "thm4",
            TheoremFixture::Thm6 => "thm6",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.id() == id)
    }

    pub fn term(self) -> BBPTerm {
        match self {
            TheoremFixture::Thm2 => pi_bbp(),
            TheoremFixture::Thm4 => catalan_bbp(),
            TheoremFixture::Thm6 => pi2_bbp(),
        }
    }

    pub fn k(self) -> usize {
        match self {
            TheoremFixture::Thm2 => 9,
            TheoremFixture::Thm4 => 4,
            TheoremFixture::Thm6 => 3,
        }
    }

    pub fn threshold(self) -> u64 {
        match self {
            TheoremFixture::Thm2 => 88,
            TheoremFixture::Thm4 => 12,
            TheoremFixture::Thm6 => 15,
        }
    }

    /// Threshold plus `{0, 2, 12}`.
    pub fn default_n_list(self) -> Vec<u64> {
        let t = self.threshold();
        vec![t, t + 2, t + 12]
    }

    /// `(lower, upper)` at `n` for residual constant `c`.
    pub fn bounds(self, c: &Rational, n: u64) -> (Rational, Rational) {
        let e = n as i64;
        let n = from_bigint(n.into());
        let at = |base: i64, shift: Rational, p: i64| pow(&int(base), e) * pow(&(&n + shift), p);
        match self {
            TheoremFixture::Thm2 => {
                let f = c * rat(16, 15);
                (&f / at(16, int(1), 23), &f / at(16, int(5), 23))
            }
            TheoremFixture::Thm4 => {
                let f = c / int(4095);
                (&f / at(4096, int(0), 13), &f / at(4096, int(5), 13))
            }
            TheoremFixture::Thm6 => {
                let f = c * rat(27, 364);
                (&f / at(729, rat(3, 2), 11), &f / at(729, rat(1, 2), 11))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundOutcome {
    Pass,
    Fail,
    Indeterminate,
    BelowThreshold,
}

impl BoundOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundOutcome::Pass => "PASS",
            BoundOutcome::Fail => "FAIL",
            BoundOutcome::Indeterminate => "INDETERMINATE",
            BoundOutcome::BelowThreshold => "BELOW-THRESHOLD",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub n: u64,
    pub n_ref: u64,
    pub lower: Rational,
    pub upper: Rational,
    pub e: Option<Enclosure>,
    pub outcome: BoundOutcome,
}

impl BoundCheck {
    /// Distance from the enclosure to the nearer bound (zero unless it passes).
    pub fn gap(&self) -> Rational {
        match (&self.e, self.outcome) {
            (Some(e), BoundOutcome::Pass) => (&e.lo - &self.lower).min(&self.upper - &e.hi),
            _ => Rational::default(),
        }
    }

    /// Enclosure width at least ten times below the gap.
    pub fn well_separated(&self) -> bool {
        match &self.e {
            Some(e) if self.outcome == BoundOutcome::Pass => e.width() * int(10) <= self.gap(),
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        let e = self.e.as_ref();
        json!({
            "n": self.n,
            "n_ref": self.n_ref,
            "lower": to_fraction_string(&self.lower),
            "upper": to_fraction_string(&self.upper),
            "E_lo": e.map(|e| to_fraction_string(&e.lo)),
            "E_hi": e.map(|e| to_fraction_string(&e.hi)),
            "outcome": self.outcome.as_str(),
            "well_separated": self.well_separated(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub fixture: TheoremFixture,
    pub series: String,
    pub k: usize,
    pub ck: Rational,
    pub checks: Vec<BoundCheck>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.outcome == BoundOutcome::Pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "fixture": self.fixture.id(),
            "series": self.series,
            "k": self.k,
            "C_k": to_fraction_string(&self.ck),
            "checks": self.checks.iter().map(BoundCheck::to_json).collect::<Vec<_>>(),
            "pass": self.passed(),
        })
    }
}

fn check_one(fixture: TheoremFixture, term: &BBPTerm, cf: &CorrectionCF, ck: &Rational, n: u64) -> Result<BoundCheck, EvalError> {
    let (lower, upper) = fixture.bounds(ck, n);
    let mut check = BoundCheck {
        n,
        n_ref: default_n_ref(n),
        lower,
        upper,
        e: None,
        outcome: BoundOutcome::BelowThreshold,
    };
    if n < fixture.threshold() {
        return Ok(check);
    }
    for doubling in 0..=MAX_DOUBLINGS {
        check.n_ref = default_n_ref(n) << doubling;
        let e = error_term(term, cf, n, check.n_ref)?;
        let inside = check.lower < e.lo && e.hi < check.upper;
        let outside = e.hi <= check.lower || e.lo >= check.upper;
        check.e = Some(e);
        if inside {
            check.outcome = BoundOutcome::Pass;
            return Ok(check);
        }
        if outside {
            check.outcome = BoundOutcome::Fail;
            return Ok(check);
        }
    }
    check.outcome = BoundOutcome::Indeterminate;
    Ok(check)
}

/// Checks the fixture's inequality at each `n` on its own series.
pub fn theorem_bounds_check(fixture: TheoremFixture, n_list: &[u64]) -> Result<BoundsReport, EvalError> {
    theorem_bounds_check_with(fixture, &fixture.term(), n_list)
}

/// As [`theorem_bounds_check`], with the correction and `C_k` taken from
/// `term` instead of the fixture's own series.
pub fn theorem_bounds_check_with(fixture: TheoremFixture, term: &BBPTerm, n_list: &[u64]) -> Result<BoundsReport, EvalError> {
    let k = fixture.k();
    let (cf, info) = build_correction(term, k)?;
    let checks = par_map(n_list, |&n| check_one(fixture, term, &cf, &info.ck, n));
    Ok(BoundsReport {
        fixture,
        series: term.name.clone(),
        k,
        ck: info.ck,
        checks: checks.into_iter().collect::<Result<_, _>>()?,
    })
}
