use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use cfaccel_core::evaluator::{
    digits, rate_fixture_check, theorem_bounds_check, BoundOutcome, DigitString, RateFixture, TheoremFixture,
};
use cfaccel_core::exact::rational::{to_fraction_string as frac, to_sci_string};
use cfaccel_core::exact::Rational;
use cfaccel_core::positivity::{certify_lemma, LemmaId, LemmaReport, LemmaStatus};
use cfaccel_core::series::catalog::{catalog as series_catalog, lookup};
use cfaccel_core::series::{parse_series, BBPTerm};
use cfaccel_core::solver::{
    build_correction_with_budget, default_budget, verify_closed_form, ClosedFormFamily, CorrectionCF, HeadKind,
    ResidualInfo,
};
use cfaccel_core::tables::{coefficient_table, compare_table, TableComparison};

use crate::{nspec, Outcome, Status};

type CmdResult = Result<Outcome, String>;

/// Six truncated significant digits, for text reports; JSON stays exact.
fn approx(x: &Rational) -> String {
    format!("~{}", to_sci_string(x, 6))
}

pub fn resolve_series(spec: &str) -> Result<BBPTerm, String> {
    let path = Path::new(spec);
    if spec.ends_with(".series") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {spec}: {e}"))?;
        return parse_series(&text).map_err(|e| format!("{spec}: {e}"));
    }
    lookup(spec).ok_or_else(|| format!("unknown series {spec:?} (see `cfaccel catalog`)"))
}

fn budget(k: usize) -> Result<usize, String> {
    match std::env::var("CFACCEL_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| format!("CFACCEL_BUDGET must be a positive integer, got {v:?}")),
        Err(_) => Ok(default_budget(k)),
    }
}

fn solve_term(term: &BBPTerm, k: usize) -> Result<(CorrectionCF, ResidualInfo), String> {
    build_correction_with_budget(term, k, budget(k)?).map_err(|e| e.to_string())
}

fn digits_json(d: &DigitString) -> Value {
    json!({
        "digits": d.text,
        "certified": d.certified,
        "approximation": frac(&d.approximation),
        "hull_lo": frac(&d.hull.lo),
        "hull_hi": frac(&d.hull.hi),
    })
}

pub fn compute(series: &str, k: usize, n: &str, base: u32) -> CmdResult {
    let term = resolve_series(series)?;
    let n = match nspec::parse(n)?.as_slice() {
        [n] => *n,
        _ => return Err("compute takes a single --n".into()),
    };
    let (cf, _) = solve_term(&term, k)?;
    let corrected = digits(&term, Some(&cf), n, base).map_err(|e| e.to_string())?;
    let plain = digits(&term, None, n, base).map_err(|e| e.to_string())?;
    let mut text = String::new();
    writeln!(text, "{}", corrected.text).unwrap();
    writeln!(
        text,
        "  {} certified base-{base} digits with MC_{k} at n={n} ({})",
        corrected.certified, term.name
    )
    .unwrap();
    writeln!(text, "  without correction: {} ({} certified)", plain.text, plain.certified).unwrap();
    Ok(Outcome {
        status: Status::Pass,
        text,
        json: json!({
            "series": term.name,
            "k": k,
            "n": n,
            "base": base,
            "corrected": digits_json(&corrected),
            "uncorrected": digits_json(&plain),
        }),
    })
}

fn correction_json(cf: &CorrectionCF) -> Value {
    json!({
        "head_kind": match cf.head_kind {
            HeadKind::ReciprocalHead => "reciprocal",
            HeadKind::PolynomialHead => "polynomial",
        },
        "lambda0": frac(&cf.lambda0),
        "kappa0": cf.kappa0,
        "head_poly": cf.head_poly.coeffs().iter().map(frac).collect::<Vec<_>>(),
        "levels": cf.levels.iter().map(|l| json!({"a": frac(&l.a), "b": frac(&l.b)})).collect::<Vec<_>>(),
    })
}

pub fn solve(series: &str, k: usize) -> CmdResult {
    let term = resolve_series(series)?;
    let (cf, info) = solve_term(&term, k)?;
    let mut text = String::new();
    writeln!(text, "series {}  k={k}", term.name).unwrap();
    match cf.head_kind {
        HeadKind::ReciprocalHead => {
            writeln!(text, "lambda0 = {}", frac(&cf.lambda0)).unwrap();
            writeln!(text, "Phi(m) = {}", cf.head_poly).unwrap();
        }
        HeadKind::PolynomialHead => writeln!(text, "head = {}", cf.head_poly).unwrap(),
    }
    for (j, l) in cf.levels.iter().enumerate() {
        writeln!(text, "a_{} = {}  b_{} = {}", j + 1, frac(&l.a), j + 1, frac(&l.b)).unwrap();
    }
    writeln!(text, "K0 = {}  C_{k} = {}", info.k0, frac(&info.ck)).unwrap();
    writeln!(text, "next = {}", frac(&info.next_order_coefficient)).unwrap();
    writeln!(text, "MC_{k}(m) = {cf}").unwrap();
    Ok(Outcome {
        status: Status::Pass,
        text,
        json: json!({
            "series": term.name,
            "k": k,
            "correction": correction_json(&cf),
            "K0": info.k0,
            "C_k": frac(&info.ck),
            "next_order_coefficient": frac(&info.next_order_coefficient),
        }),
    })
}

/// One line of a verification report.
struct Check {
    label: String,
    status: Status,
    details: Vec<String>,
    json: Value,
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn table_check(cmp: &TableComparison) -> Check {
    let mut details: Vec<String> = cmp
        .mismatches
        .iter()
        .map(|m| format!("{}: published {}, solved {}", m.item, frac(&m.published), frac(&m.solved)))
        .collect();
    if let Some(e) = &cmp.error {
        details.push(format!("solver error: {e}"));
    }
    Check {
        label: format!("{} on {} ({} values)", cmp.table, cmp.series, cmp.checked),
        status: pass_if(cmp.passed()),
        details,
        json: json!({
            "table": cmp.table,
            "series": cmp.series,
            "checked": cmp.checked,
            "mismatches": cmp.mismatches.iter().map(|m| json!({
                "item": m.item,
                "published": frac(&m.published),
                "solved": frac(&m.solved),
            })).collect::<Vec<_>>(),
            "error": cmp.error,
        }),
    }
}

fn coefficient_checks(table_id: &str) -> Result<Vec<Check>, String> {
    let table = coefficient_table(table_id).ok_or_else(|| format!("no table {table_id}"))?;
    let mut checks = vec![table_check(&compare_table(&table, &resolve_series(table.series)?))];
    if let Some(other) = table.computed_from {
        checks.push(table_check(&compare_table(&table, &resolve_series(other)?)));
    }
    Ok(checks)
}

fn closed_form_checks(k_max: usize) -> Vec<Check> {
    ClosedFormFamily::ALL
        .iter()
        .map(|&f| {
            let r = verify_closed_form(f, k_max);
            let mut details = Vec::new();
            if r.head_solved != r.head_expected {
                details.push(format!(
                    "head: expected ({}, {}), solved ({}, {})",
                    frac(&r.head_expected.0),
                    frac(&r.head_expected.1),
                    frac(&r.head_solved.0),
                    frac(&r.head_solved.1)
                ));
            }
            for l in r.levels.iter().filter(|l| !l.equal()) {
                details.push(format!(
                    "k={}: expected (a, b) = ({}, {}), solved ({}, {})",
                    l.k,
                    frac(&l.expected.0),
                    frac(&l.expected.1),
                    frac(&l.solved.0),
                    frac(&l.solved.1)
                ));
            }
            if let Some(s) = &r.stopped {
                details.push(format!("solver stopped: {s}"));
            }
            Check {
                label: format!("{} closed form, k = 1..{k_max}", f.id()),
                status: pass_if(r.all_equal()),
                json: json!({
                    "family": f.id(),
                    "k_max": k_max,
                    "mismatches": details,
                }),
                details,
            }
        })
        .collect()
}

fn rate_checks(fixture: RateFixture, n_list: Option<&[u64]>, k: Option<usize>) -> Result<Vec<Check>, String> {
    let ks = k.map(|k| vec![k]).unwrap_or_else(|| fixture.default_ks());
    let mut out = Vec::new();
    for k in ks {
        let r = rate_fixture_check(fixture, k, n_list).map_err(|e| e.to_string())?;
        let mut details: Vec<String> = r
            .at
            .iter()
            .map(|e| {
                format!(
                    "n={}: scaled error {}, limit {} {}, deviation {} (tolerance {})",
                    e.n,
                    approx(&e.scaled.midpoint()),
                    frac(&e.expected_limit),
                    approx(&e.expected_limit),
                    approx(&e.deviation),
                    frac(&r.rel_tol)
                )
            })
            .collect();
        details.push(format!(
            "distance to the limit shrinks from n={} to n={}: {}",
            r.approach.0, r.approach.1, r.monotone
        ));
        out.push(Check {
            label: format!("{} k={k}", fixture.id()),
            status: pass_if(r.passed()),
            details,
            json: r.to_json(),
        });
    }
    Ok(out)
}

fn bounds_checks(fixture: TheoremFixture, n_list: Option<Vec<u64>>) -> Result<Vec<Check>, String> {
    let n_list = n_list.unwrap_or_else(|| fixture.default_n_list());
    if let Some(n) = n_list.iter().find(|&&n| n < fixture.threshold()) {
        return Err(format!("n={n} is below the threshold n >= {} of {}", fixture.threshold(), fixture.id()));
    }
    let report = theorem_bounds_check(fixture, &n_list).map_err(|e| e.to_string())?;
    Ok(report
        .checks
        .iter()
        .map(|c| {
            let status = match c.outcome {
                BoundOutcome::Pass => Status::Pass,
                BoundOutcome::Indeterminate => Status::Indeterminate,
                BoundOutcome::Fail | BoundOutcome::BelowThreshold => Status::Fail,
            };
            let mut details = vec![format!("bounds [{}, {}]", approx(&c.lower), approx(&c.upper))];
            if let Some(e) = &c.e {
                details.push(format!(
                    "E in [{}, {}], width {} (reference cut {})",
                    approx(&e.lo),
                    approx(&e.hi),
                    approx(&e.width()),
                    c.n_ref
                ));
            }
            Check {
                label: format!("{} at n={} (k={})", fixture.id(), c.n, report.k),
                status,
                details,
                json: c.to_json(),
            }
        })
        .collect())
}

pub const FIXTURES: [&str; 12] = [
    "thm1-coefficients",
    "thm3-coefficients",
    "thm5-coefficients",
    "ramanujan-coefficients",
    "sect6-closed-forms",
    "pi-rate",
    "catalan-rate",
    "pi2-rate",
    "ramanujan-rate",
    "thm2-bounds",
    "thm4-bounds",
    "thm6-bounds",
];

pub fn verify(fixture: &str, n: Option<&str>, k: Option<usize>) -> CmdResult {
    let n_list = n.map(nspec::parse).transpose()?;
    let checks = match fixture {
        "thm1-coefficients" => coefficient_checks("thm1")?,
        "thm3-coefficients" => coefficient_checks("thm3")?,
        "thm5-coefficients" => coefficient_checks("thm5")?,
        "ramanujan-coefficients" => coefficient_checks("ramanujan")?,
        "sect6-closed-forms" => closed_form_checks(k.unwrap_or(20)),
        _ => {
            if let Some(f) = RateFixture::from_id(fixture) {
                rate_checks(f, n_list.as_deref(), k)?
            } else if let Some(f) = fixture.strip_suffix("-bounds").and_then(TheoremFixture::from_id) {
                bounds_checks(f, n_list)?
            } else {
                return Err(format!("unknown fixture {fixture:?}; known: {}", FIXTURES.join(", ")));
            }
        }
    };
    let status = checks.iter().fold(Status::Pass, |s, c| s.combine(c.status));
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{} {}", c.status.as_str(), c.label).unwrap();
        for d in &c.details {
            writeln!(text, "    {d}").unwrap();
        }
    }
    writeln!(text, "{} {fixture}", status.as_str()).unwrap();
    Ok(Outcome {
        status,
        text,
        json: json!({
            "fixture": fixture,
            "checks": checks.iter().map(|c| json!({
                "label": c.label,
                "status": c.status.as_str(),
                "details": c.json,
            })).collect::<Vec<_>>(),
        }),
    })
}

fn lemma_text(r: &LemmaReport, text: &mut String) {
    writeln!(text, "{} {}", r.lemma.id(), r.status().as_str()).unwrap();
    for c in &r.claims {
        let cert = &c.certificate;
        write!(text, "  {}: {}", c.label, cert.verdict).unwrap();
        if cert.is_proven() {
            write!(text, " (all coefficients one-signed from m = {})", cert.witness_shift).unwrap();
        }
        if !c.required {
            write!(text, " [alternative]").unwrap();
        }
        writeln!(text).unwrap();
    }
    if let Some(d) = &r.d_check {
        writeln!(
            text,
            "  D vs solver: equal={} same_sign={} implied_shift={} within_offsets={}",
            d.equal,
            d.same_sign,
            d.implied_shift.as_ref().map(approx).unwrap_or_else(|| "none".into()),
            d.within_offsets
        )
        .unwrap();
    }
    for n in &r.notes {
        writeln!(text, "  note: {n}").unwrap();
    }
}

pub fn certify(lemma: &str) -> CmdResult {
    let ids: Vec<LemmaId> = match lemma {
        "all" => LemmaId::ALL.to_vec(),
        id => vec![LemmaId::from_id(id).ok_or_else(|| {
            let known: Vec<_> = LemmaId::ALL.iter().map(|l| l.id()).collect();
            format!("unknown lemma {id:?}; known: {}, all", known.join(", "))
        })?],
    };
    let reports: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = ids.iter().map(|&id| s.spawn(move || certify_lemma(id))).collect();
        handles.into_iter().map(|h| h.join().expect("certificate worker panicked")).collect()
    });
    let reports = reports.into_iter().collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let status = reports.iter().fold(Status::Pass, |s, r| {
        s.combine(match r.status() {
            LemmaStatus::Certified => Status::Pass,
            LemmaStatus::Unknown => Status::Indeterminate,
            LemmaStatus::Refuted => Status::Fail,
        })
    });
    let mut text = String::new();
    for r in &reports {
        lemma_text(r, &mut text);
    }
    Ok(Outcome {
        status,
        text,
        json: json!({ "lemmas": reports.iter().map(LemmaReport::to_json).collect::<Vec<_>>() }),
    })
}

pub fn catalog() -> Outcome {
    let mut text = String::new();
    let entries = series_catalog();
    for e in &entries {
        writeln!(
            text,
            "{:<26} {:<44} {}",
            e.term.name,
            e.constant_name,
            e.fixture.unwrap_or("-")
        )
        .unwrap();
    }
    writeln!(text, "fixtures: {}", FIXTURES.join(", ")).unwrap();
    let lemmas: Vec<_> = LemmaId::ALL.iter().map(|l| l.id()).collect();
    writeln!(text, "lemmas: {}", lemmas.join(", ")).unwrap();
    Outcome {
        status: Status::Pass,
        text,
        json: json!({
            "series": entries.iter().map(|e| json!({
                "name": e.term.name,
                "constant": e.constant_name,
                "fixture": e.fixture,
            })).collect::<Vec<_>>(),
            "fixtures": FIXTURES,
            "lemmas": lemmas,
        }),
    }
}
