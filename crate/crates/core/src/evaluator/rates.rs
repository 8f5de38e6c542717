use serde_json::{json, Value};

use crate::exact::rational::{rat, to_fraction_string};
use crate::exact::Rational;
use crate::series::catalog::{catalan_bbp, pi2_bbp, pi_bbp, ramanujan_inv_pi};
use crate::series::BBPTerm;
use crate::solver::build_correction;

use super::{rate_check, Enclosure, ErrorReport, EvalError};

/// Rate-of-convergence checks: the scaled error against its limit at a main
/// `n`, plus a strict approach between two further cuts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RateFixture {
    Pi,
    Catalan,
    Pi2,
    Ramanujan,
}

impl RateFixture {
    pub const ALL: [RateFixture; 4] = [RateFixture::Pi, RateFixture::Catalan, RateFixture::Pi2, RateFixture::Ramanujan];

    pub fn id(self) -> &'static str {
        match self {
            RateFixture::Pi => "pi-rate",
            RateFixture::Catalan => "catalan-rate",
            RateFixture::Pi2 => "pi2-rate",
            RateFixture::Ramanujan => "ramanujan-rate",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.id() == id)
    }

    pub fn term(self) -> BBPTerm {
        match self {
            RateFixture::Pi => pi_bbp(),
            RateFixture::Catalan => catalan_bbp(),
            RateFixture::Pi2 => pi2_bbp(),
            RateFixture::Ramanujan => ramanujan_inv_pi(),
        }
    }

    pub fn main_n(self) -> u64 {
        match self {
            RateFixture::Pi => 50,
            RateFixture::Catalan | RateFixture::Pi2 => 40,
            RateFixture::Ramanujan => 60,
        }
    }

    pub fn rel_tol(self) -> Rational {
        match self {
            RateFixture::Ramanujan => rat(1, 5),
            _ => rat(1, 10),
        }
    }

    /// `(n_lo, n_hi)`: the distance to the limit must shrink strictly.
    pub fn approach_pair(self) -> (u64, u64) {
        match self {
            RateFixture::Pi => (40, 80),
            RateFixture::Catalan | RateFixture::Pi2 => (20, 80),
            RateFixture::Ramanujan => (30, 120),
        }
    }

    pub fn default_ks(self) -> Vec<usize> {
        vec![0, 1, 2]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateFixtureReport {
    pub fixture: RateFixture,
    pub k: usize,
    pub rel_tol: Rational,
    /// One report per requested `n`.
    pub at: Vec<ErrorReport>,
    pub approach: (u64, u64),
    pub distances: (Enclosure, Enclosure),
    pub monotone: bool,
}

impl RateFixtureReport {
    pub fn within_tolerance(&self) -> bool {
        self.at.iter().all(|r| r.pass)
    }

    pub fn passed(&self) -> bool {
        self.monotone && self.within_tolerance()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "fixture": self.fixture.id(),
            "k": self.k,
            "rel_tol": to_fraction_string(&self.rel_tol),
            "reports": self.at.iter().map(|r| {
                let mut v = r.to_json();
                v["deviation"] = Value::from(to_fraction_string(&r.deviation));
                v
            }).collect::<Vec<_>>(),
            "approach": [self.approach.0, self.approach.1],
            "monotone": self.monotone,
            "pass": self.passed(),
        })
    }
}

/// Runs the fixture at depth `k`. `n_list` defaults to the fixture's main `n`.
pub fn rate_fixture_check(fixture: RateFixture, k: usize, n_list: Option<&[u64]>) -> Result<RateFixtureReport, EvalError> {
    let term = fixture.term();
    let (cf, info) = build_correction(&term, k)?;
    let tol = fixture.rel_tol();
    let main = [fixture.main_n()];
    let at = rate_check(&term, &cf, &info, n_list.unwrap_or(&main), &tol)?;
    let (lo, hi) = fixture.approach_pair();
    let approach = rate_check(&term, &cf, &info, &[lo, hi], &tol)?;
    let mut d = approach.distances.into_iter();
    let distances = (d.next().expect("two cuts"), d.next().expect("two cuts"));
    Ok(RateFixtureReport {
        fixture,
        k,
        rel_tol: tol,
        at: at.reports,
        approach: (lo, hi),
        distances,
        monotone: approach.monotone,
    })
}
