//! The published telescoping lemmas as certificate fixtures.

use serde_json::{json, Value};

use crate::exact::rational::{int, parse_rational, rat, to_compact_string, to_fraction_string};
use crate::exact::{Polynomial, Rational, RationalFunction};
use crate::series::catalog::{catalan_bbp, pi2_bbp_first_row, pi_bbp};

use super::{
    certify_second_order_bracket, certify_tail_bound, prove_sign_on_ray, BracketReport, DCheck, PositivityError,
    SignCertificate, TailBoundPair, TailBoundReport, Verdict,
};

pub const D10: &str = "28928763399211176287296777111194638413125/2409036421853659622126333496131584";
pub const D5: &str = "1688333983180439467559656563442776672937656721610720727013667676284669255/\
342315876957165258079588638702247355650182866279601922774818539625196290048";
pub const D4: &str = "-124280353667510106220979748750667909695624573786666800114069359390500727018449872352585153675322995125291007697/\
7410030933045371437546343001038973984710540812824724996194805971487253427817067830381380462371074531080221491200";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaId {
    Lemma2,
    Lemma2VVariant,
    Lemma3,
    Lemma4,
    Lemma6,
    Lemma7,
    Lemma8,
    Lemma10,
    Lemma11,
    Lemma12,
}

impl LemmaId {
    pub const ALL: [LemmaId; 10] = [
        LemmaId::Lemma2,
        LemmaId::Lemma2VVariant,
        LemmaId::Lemma3,
        LemmaId::Lemma4,
        LemmaId::Lemma6,
        LemmaId::Lemma7,
        LemmaId::Lemma8,
        LemmaId::Lemma10,
        LemmaId::Lemma11,
        LemmaId::Lemma12,
    ];

    pub fn id(self) -> &'static str {
        match self {
            LemmaId::Lemma2 => "lemma2",
            LemmaId::Lemma2VVariant => "lemma2-v-variant",
            LemmaId::Lemma3 => "lemma3",
            LemmaId::Lemma4 => "lemma4",
            LemmaId::Lemma6 => "lemma6",
            LemmaId::Lemma7 => "lemma7",
            LemmaId::Lemma8 => "lemma8",
            LemmaId::Lemma10 => "lemma10",
            LemmaId::Lemma11 => "lemma11",
            LemmaId::Lemma12 => "lemma12",
        }
    }

    pub fn from_id(id: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|l| l.id() == id)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaClaim {
    pub label: String,
    pub expected: Verdict,
    /// Informational claims (alternative readings) do not affect the status.
    pub required: bool,
    pub certificate: SignCertificate,
}

impl LemmaClaim {
    pub fn holds(&self) -> bool {
        self.certificate.verdict == self.expected
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaStatus {
    Certified,
    Unknown,
    /// A required claim was proven with the opposite sign.
    Refuted,
}

impl LemmaStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LemmaStatus::Certified => "certified",
            LemmaStatus::Unknown => "unknown",
            LemmaStatus::Refuted => "refuted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub claims: Vec<LemmaClaim>,
    /// `u, v -> 0` for every tail pair involved.
    pub decays: bool,
    pub d_check: Option<DCheck>,
    pub notes: Vec<String>,
}

impl LemmaReport {
    pub fn status(&self) -> LemmaStatus {
        let required = || self.claims.iter().filter(|c| c.required);
        if required().any(|c| c.certificate.is_proven() && !c.holds()) {
            LemmaStatus::Refuted
        } else if required().all(LemmaClaim::holds) && self.decays {
            LemmaStatus::Certified
        } else {
            LemmaStatus::Unknown
        }
    }

    pub fn certified(&self) -> bool {
        self.status() == LemmaStatus::Certified
    }

    pub fn to_json(&self) -> Value {
        let claims: Vec<Value> = self
            .claims
            .iter()
            .map(|c| {
                json!({
                    "label": c.label,
                    "expected": c.expected.as_str(),
                    "required": c.required,
                    "holds": c.holds(),
                    "certificate": c.certificate.to_json(),
                })
            })
            .collect();
        let d_check = self.d_check.as_ref().map(|d| {
            json!({
                "solver_d": to_fraction_string(&d.solver_d),
                "equal": d.equal,
                "same_sign": d.same_sign,
                "implied_shift": d.implied_shift.as_ref().map(to_fraction_string),
                "within_offsets": d.within_offsets,
            })
        });
        json!({
            "lemma": self.lemma.id(),
            "status": self.status().as_str(),
            "decays": self.decays,
            "claims": claims,
            "d_check": d_check,
            "notes": self.notes,
        })
    }
}

fn q(s: &str) -> Rational {
    parse_rational(s).expect("fixture constant")
}

/// `sum c_i m^e_i`.
fn sparse(terms: &[(Rational, usize)]) -> Polynomial {
    terms
        .iter()
        .fold(Polynomial::zero(), |acc, (c, e)| &acc + &Polynomial::monomial(c.clone(), *e))
}

fn recip(p: Polynomial) -> RationalFunction {
    RationalFunction::new(Polynomial::one(), p).expect("nonzero polynomial")
}

/// `1 / (scale (m + c)^p)`.
fn shifted_power(scale: Rational, c: Rational, p: u32) -> RationalFunction {
    recip(Polynomial::linear(int(1), c).pow(p).scale(&scale))
}

fn lemma2_u() -> RationalFunction {
    recip(sparse(&[(rat(15, 16), 23), (rat(23, 16), 22)]))
}

/// The `v` of the tail lemma for `sum 1/(m^23 16^m)`, with the `n^21`
/// coefficient `-coeff`.
fn lemma2_v(coeff: Rational) -> RationalFunction {
    recip(sparse(&[(rat(15, 16), 23), (rat(23, 16), 22), (-coeff, 21)]))
}

fn pair(u: RationalFunction, v: RationalFunction, power: u32, shift: Rational, base: i64) -> TailBoundPair {
    TailBoundPair {
        u,
        v,
        power,
        shift,
        q: int(base),
    }
}

fn tail_claims(name: &str, report: TailBoundReport) -> Vec<LemmaClaim> {
    vec![
        LemmaClaim {
            label: format!("{name}: u(m) - u(m+1)/q - summand < 0 on m >= {}", report.n0),
            expected: Verdict::ProvenNegative,
            required: true,
            certificate: report.lower,
        },
        LemmaClaim {
            label: format!("{name}: v(m) - v(m+1)/q - summand > 0 on m >= {}", report.n0),
            expected: Verdict::ProvenPositive,
            required: true,
            certificate: report.upper,
        },
    ]
}

fn tail_lemma(lemma: LemmaId, pairs: Vec<(&str, TailBoundPair)>, n0: i64) -> Result<LemmaReport, PositivityError> {
    let mut report = LemmaReport {
        lemma,
        claims: Vec::new(),
        decays: true,
        d_check: None,
        notes: Vec::new(),
    };
    for (name, p) in pairs {
        let r = certify_tail_bound(&p, n0)?;
        report.decays &= r.decays;
        report.claims.extend(tail_claims(name, r));
    }
    Ok(report)
}

fn bracket_lemma(lemma: LemmaId, r: BracketReport) -> LemmaReport {
    let label = |beta: &Rational, rel: &str| {
        format!(
            "{} k={}: f + C/m^{} + D/(m+{})^{} {rel} 0 on m >= {}",
            r.series,
            r.k,
            r.k0,
            to_compact_string(beta),
            r.k0 + 1,
            r.m0
        )
    };
    let mut notes = Vec::new();
    if !r.d_check.equal {
        notes.push(format!(
            "D differs from the solver's next-order coefficient {}",
            to_fraction_string(&r.d_check.solver_d)
        ));
    }
    LemmaReport {
        lemma,
        claims: vec![
            LemmaClaim {
                label: label(&r.beta_lo, ">"),
                expected: Verdict::ProvenPositive,
                required: true,
                certificate: r.lower,
            },
            LemmaClaim {
                label: label(&r.beta_hi, "<"),
                expected: Verdict::ProvenNegative,
                required: true,
                certificate: r.upper,
            },
        ],
        decays: true,
        d_check: Some(r.d_check),
        notes,
    }
}

/// Smallest ray start in `[from, to]` on which `f` gets the verdict `want`.
fn first_ray(f: &RationalFunction, want: Verdict, from: i64, to: i64) -> Result<Option<i64>, PositivityError> {
    for m0 in from..=to {
        if prove_sign_on_ray(f, &int(m0))?.verdict == want {
            return Ok(Some(m0));
        }
    }
    Ok(None)
}

fn lemma2_v_variant() -> Result<LemmaReport, PositivityError> {
    let variants = [("v with n^21 coefficient 4163/240", rat(4163, 240), true), ("v with n^21 coefficient 4163/15", rat(4163, 15), false)];
    let mut report = LemmaReport {
        lemma: LemmaId::Lemma2VVariant,
        claims: Vec::new(),
        decays: true,
        d_check: None,
        notes: Vec::new(),
    };
    for (name, coeff, required) in variants {
        let p = pair(lemma2_u(), lemma2_v(coeff), 23, int(0), 16);
        let diff = p.telescoping_difference(&p.v);
        let cert = prove_sign_on_ray(&diff, &int(4))?;
        let verdict = cert.verdict;
        report.claims.push(LemmaClaim {
            label: format!("{name}: v(m) - v(m+1)/16 - 1/m^23 > 0 on m >= 4"),
            expected: Verdict::ProvenPositive,
            required,
            certificate: cert,
        });
        let note = if verdict == Verdict::ProvenPositive {
            format!("{name}: certified on m >= 4")
        } else {
            match first_ray(&diff, Verdict::ProvenPositive, 5, 64)? {
                Some(m0) => format!("{name}: not certified on m >= 4; certified from m >= {m0}"),
                None => format!("{name}: not certified on any ray start up to 64"),
            }
        };
        report.notes.push(note);
    }
    Ok(report)
}

pub fn certify_lemma(lemma: LemmaId) -> Result<LemmaReport, PositivityError> {
    match lemma {
        LemmaId::Lemma2 => tail_lemma(
            lemma,
            vec![("sum 1/(m^23 16^m)", pair(lemma2_u(), lemma2_v(rat(4163, 240)), 23, int(0), 16))],
            4,
        ),
        LemmaId::Lemma2VVariant => lemma2_v_variant(),
        LemmaId::Lemma3 => Ok(bracket_lemma(
            lemma,
            certify_second_order_bracket(&pi_bbp(), 9, &q(D10), &rat(55, 32), &rat(71, 32), 41)?,
        )),
        LemmaId::Lemma4 => {
            let s = rat(15, 16);
            tail_lemma(
                lemma,
                vec![
                    (
                        "sum 1/((m+55/32)^24 16^m)",
                        pair(
                            shifted_power(s.clone(), rat(63, 32), 24),
                            shifted_power(s.clone(), rat(55, 32), 24),
                            24,
                            rat(55, 32),
                            16,
                        ),
                    ),
                    (
                        "sum 1/((m+71/32)^24 16^m)",
                        pair(
                            shifted_power(s.clone(), rat(79, 32), 24),
                            shifted_power(s, rat(71, 32), 24),
                            24,
                            rat(71, 32),
                            16,
                        ),
                    ),
                ],
                1,
            )
        }
        LemmaId::Lemma6 => {
            let head = [(rat(4095, 4096), 13), (rat(13, 4096), 12)];
            let u = recip(sparse(&head));
            let v = recip(&sparse(&head) - &Polynomial::monomial(rat(14333, 645120), 11));
            tail_lemma(lemma, vec![("sum 1/(m^13 4096^m)", pair(u, v, 13, int(0), 4096))], 1)
        }
        LemmaId::Lemma7 => Ok(bracket_lemma(
            lemma,
            certify_second_order_bracket(&catalan_bbp(), 4, &q(D5), &rat(1, 4), &rat(3, 4), 2)?,
        )),
        LemmaId::Lemma8 => {
            let s = rat(4095, 4096);
            tail_lemma(
                lemma,
                vec![
                    (
                        "sum 1/((m+1/4)^14 4096^m)",
                        pair(
                            shifted_power(s.clone(), rat(1, 2), 14),
                            shifted_power(s.clone(), rat(1, 4), 14),
                            14,
                            rat(1, 4),
                            4096,
                        ),
                    ),
                    (
                        "sum 1/((m+3/4)^14 4096^m)",
                        pair(
                            shifted_power(s.clone(), int(1), 14),
                            shifted_power(s, rat(3, 4), 14),
                            14,
                            rat(3, 4),
                            4096,
                        ),
                    ),
                ],
                1,
            )
        }
        LemmaId::Lemma10 => {
            let head = [(rat(728, 729), 11), (rat(11, 729), 10)];
            let u = recip(sparse(&head));
            let v = recip(&sparse(&head) - &Polynomial::monomial(rat(48059, 530712), 9));
            tail_lemma(lemma, vec![("sum 1/(m^11 729^m)", pair(u, v, 11, int(0), 729))], 1)
        }
        LemmaId::Lemma11 => {
            // The published D belongs to the correction of the first four
            // fractions of the pi^2 term; see `pi2_bbp_first_row`.
            let mut r = bracket_lemma(
                lemma,
                certify_second_order_bracket(&pi2_bbp_first_row(), 3, &q(D4), &rat(1, 2), &int(0), 1)?,
            );
            r.notes.push("bracket built from pi2-bbp-first-row".into());
            Ok(r)
        }
        LemmaId::Lemma12 => {
            let s = rat(728, 729);
            let u1 = recip(sparse(&[(s.clone(), 12), (rat(4, 243), 11)]));
            let v1 = recip(sparse(&[(s.clone(), 12)]));
            let u2 = shifted_power(s.clone(), rat(3, 4), 12);
            let v2 = recip(sparse(&[(s, 12), (rat(1460, 243), 11)]));
            tail_lemma(
                lemma,
                vec![
                    ("sum 1/(m^12 729^m)", pair(u1, v1, 12, int(0), 729)),
                    ("sum 1/((m+1/2)^12 729^m)", pair(u2, v2, 12, rat(1, 2), 729)),
                ],
                1,
            )
        }
    }
}
