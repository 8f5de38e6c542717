use crate::exact::Rational;
use crate::series::catalog::{catalan_central_binomial, inverse_squares_4m1, ln2_mercator};
use crate::series::BBPTerm;
use crate::tables::families;

use super::{extend_level, HeadKind, LevelOutcome, SolverError, SolverState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormFamily {
    CatalanCentralBinomial,
    Ln2,
    InverseSquares4m1,
}

impl ClosedFormFamily {
    pub const ALL: [ClosedFormFamily; 3] = [
        ClosedFormFamily::CatalanCentralBinomial,
        ClosedFormFamily::Ln2,
        ClosedFormFamily::InverseSquares4m1,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ClosedFormFamily::CatalanCentralBinomial => "catalan-cb",
            ClosedFormFamily::Ln2 => "ln2",
            ClosedFormFamily::InverseSquares4m1 => "sq4m1",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.id() == id)
    }

    pub fn term(self) -> BBPTerm {
        match self {
            ClosedFormFamily::CatalanCentralBinomial => catalan_central_binomial(),
            ClosedFormFamily::Ln2 => ln2_mercator(),
            ClosedFormFamily::InverseSquares4m1 => inverse_squares_4m1(),
        }
    }

    pub fn level(self, k: i64) -> (Rational, Rational) {
        match self {
            ClosedFormFamily::CatalanCentralBinomial => families::catalan_cb_level(k),
            ClosedFormFamily::Ln2 => families::ln2_level(k),
            ClosedFormFamily::InverseSquares4m1 => families::sq4m1_level(k),
        }
    }

    /// `(lambda0, phi0)` of the head `lambda0 / (m + phi0)`.
    pub fn head(self) -> (Rational, Rational) {
        match self {
            ClosedFormFamily::CatalanCentralBinomial => families::catalan_cb_head(),
            ClosedFormFamily::Ln2 => families::ln2_head(),
            ClosedFormFamily::InverseSquares4m1 => families::sq4m1_head(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCheck {
    pub k: usize,
    pub solved: (Rational, Rational),
    pub expected: (Rational, Rational),
}

impl LevelCheck {
    pub fn equal(&self) -> bool {
        self.solved == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub family: ClosedFormFamily,
    pub head_solved: (Rational, Rational),
    pub head_expected: (Rational, Rational),
    pub levels: Vec<LevelCheck>,
    /// Set when the solver stopped before `k_max`.
    pub stopped: Option<String>,
}

impl ClosedFormReport {
    pub fn all_equal(&self) -> bool {
        self.stopped.is_none() && self.head_solved == self.head_expected && self.levels.iter().all(LevelCheck::equal)
    }
}

/// Solves `k_max` levels of the family's series and compares each with the
/// closed form. Mismatches and solver failures are report content.
pub fn verify_closed_form(family: ClosedFormFamily, k_max: usize) -> ClosedFormReport {
    let mut report = ClosedFormReport {
        family,
        head_solved: (Rational::default(), Rational::default()),
        head_expected: family.head(),
        levels: Vec::new(),
        stopped: None,
    };
    let mut state = match SolverState::new(&family.term(), super::default_budget(k_max)) {
        Ok(s) => s,
        Err(e) => {
            report.stopped = Some(e.to_string());
            return report;
        }
    };
    let cf = &state.cf;
    report.head_solved = match (cf.head_kind, cf.head_poly.degree()) {
        (HeadKind::ReciprocalHead, Some(1)) => (cf.lambda0.clone(), cf.head_poly.coeff(0)),
        _ => {
            report.stopped = Some(format!("head is not of the form lambda/(m + c): {cf}"));
            return report;
        }
    };
    for k in 1..=k_max {
        match extend_level(&mut state) {
            Ok(LevelOutcome::Extended(level)) => report.levels.push(LevelCheck {
                k,
                solved: (level.a, level.b),
                expected: family.level(k as i64),
            }),
            Ok(LevelOutcome::ExactTermination) => {
                report.stopped = Some(SolverError::ExactTermination { depth: k - 1 }.to_string());
                break;
            }
            Err(e) => {
                report.stopped = Some(e.to_string());
                break;
            }
        }
    }
    report
}
