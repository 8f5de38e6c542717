//! One line per acceptance criterion. Criteria that fail print FAIL; the
//! target itself fails only when a result departs from the analysed one
//! (a new failure, or a known discrepancy that changed shape).

use std::process::ExitCode;
use std::time::Instant;

use cfaccel_core::evaluator::*;
use cfaccel_core::exact::rational::{int, to_sci_string};
use cfaccel_core::exact::Rational;
use cfaccel_core::positivity::{certify_lemma, LemmaId};
use cfaccel_core::series::catalog::*;
use cfaccel_core::solver::*;
use cfaccel_core::tables::*;

struct Line {
    pass: bool,
    /// The result is the analysed one (always true for a pass).
    expected: bool,
    detail: String,
}

fn criterion1() -> Line {
    let start = Instant::now();
    let pi = compare_table(&pi_table(), &pi_bbp());
    let ram = compare_table(&ramanujan_table(), &ramanujan_inv_pi());
    let cat = compare_table(&catalan_table(), &catalan_bbp());
    let pi2 = compare_table(&pi2_table(), &pi2_bbp());
    let pi2_row = compare_table(&pi2_table(), &pi2_bbp_first_row());
    let secs = start.elapsed().as_secs_f64();
    let cat_items: Vec<&str> = cat.mismatches.iter().map(|m| m.item.as_str()).collect();
    let cat_known = cat_items == ["lambda0", "C_2", "C_3"]
        && cat.mismatches[0].solved == cat.mismatches[0].published.recip()
        && cat.mismatches[1..].iter().all(|m| m.solved == -m.published.clone());
    let in_time = secs < 60.0;
    let pass = pi.passed() && ram.passed() && cat.passed() && pi2.passed() && in_time;
    let expected = pi.passed() && ram.passed() && cat_known && !pi2.passed() && pi2_row.passed() && in_time;
    Line {
        pass,
        expected,
        detail: format!(
            "pi {}/{} exact, ramanujan {}/{} exact; catalan mismatches {:?} (reciprocal lambda0, sign of C_2, C_3); \
             pi^2 table {} on the stated term, {} on its first four fractions; {secs:.1}s",
            pi.checked - pi.mismatches.len(),
            pi.checked,
            ram.checked - ram.mismatches.len(),
            ram.checked,
            cat_items,
            if pi2.passed() { "matches" } else { "differs" },
            if pi2_row.passed() { "matches exactly" } else { "differs" },
        ),
    }
}

fn criterion2() -> Line {
    let cb = verify_closed_form(ClosedFormFamily::CatalanCentralBinomial, 20);
    let sq = verify_closed_form(ClosedFormFamily::InverseSquares4m1, 20);
    let ln2 = verify_closed_form(ClosedFormFamily::Ln2, 20);
    let ln2_shifted = ln2.stopped.is_none()
        && ln2.levels.len() == 20
        && ln2.head_solved == ln2.head_expected
        && ln2.levels.iter().all(|l| l.solved.0 == l.expected.0 && l.solved.1 == &l.expected.1 + int(3));
    let pass = cb.all_equal() && sq.all_equal() && ln2.all_equal();
    Line {
        pass,
        expected: cb.all_equal() && sq.all_equal() && (ln2.all_equal() || ln2_shifted),
        detail: format!(
            "k=1..20: catalan-cb {}, sq4m1 {}, ln2 a_k {} but b_k = 3k+1 where 3k-2 is stated",
            if cb.all_equal() { "equal" } else { "differs" },
            if sq.all_equal() { "equal" } else { "differs" },
            if ln2.levels.iter().all(|l| l.solved.0 == l.expected.0) { "equal" } else { "differs" },
        ),
    }
}

/// Truncated to two decimals, exactly.
fn percent(x: &Rational) -> String {
    let bp = (x * int(10000)).floor().to_integer();
    format!("{}.{:02}%", &bp / 100, &bp % 100)
}

fn criterion3() -> Line {
    let known_red = [(RateFixture::Pi, 1), (RateFixture::Pi, 2), (RateFixture::Pi2, 2)];
    let mut failing = Vec::new();
    let mut parts = Vec::new();
    let mut all_monotone = true;
    for f in RateFixture::ALL {
        for k in f.default_ks() {
            let r = rate_fixture_check(f, k, None).expect("rate check runs");
            all_monotone &= r.monotone;
            let dev = &r.at[0].deviation;
            parts.push(format!("{} k={k} {}", f.id().trim_end_matches("-rate"), percent(dev)));
            if !r.passed() {
                failing.push((f, k));
            }
        }
    }
    Line {
        pass: failing.is_empty(),
        expected: failing == known_red && all_monotone,
        detail: format!(
            "deviation from the limit: {}; approach strictly monotone everywhere: {all_monotone}",
            parts.join(", ")
        ),
    }
}

fn criterion4() -> Line {
    let cases: [(TheoremFixture, &[u64]); 3] = [
        (TheoremFixture::Thm2, &[88, 90, 100, 120]),
        (TheoremFixture::Thm4, &[12, 20, 40]),
        (TheoremFixture::Thm6, &[15, 25, 50]),
    ];
    let mut pass = true;
    let mut worst: Option<Rational> = None;
    for (f, ns) in cases {
        let r = theorem_bounds_check(f, ns).expect("bounds check runs");
        for c in &r.checks {
            pass &= c.outcome == BoundOutcome::Pass && c.well_separated();
            if let Some(e) = &c.e {
                if c.outcome == BoundOutcome::Pass {
                    let ratio = e.width() / c.gap();
                    if worst.as_ref().is_none_or(|w| &ratio > w) {
                        worst = Some(ratio);
                    }
                }
            }
        }
    }
    Line {
        pass,
        expected: pass,
        detail: format!(
            "thm2 n=88,90,100,120; thm4 n=12,20,40; thm6 n=15,25,50; largest width/gap {}",
            worst.map(|w| to_sci_string(&w, 3)).unwrap_or_else(|| "-".into())
        ),
    }
}

fn criterion5() -> Line {
    let telescoping = [LemmaId::Lemma2, LemmaId::Lemma4, LemmaId::Lemma6, LemmaId::Lemma8, LemmaId::Lemma10, LemmaId::Lemma12];
    let brackets = [(LemmaId::Lemma3, 41), (LemmaId::Lemma7, 2), (LemmaId::Lemma11, 1)];
    let mut pass = true;
    let mut failed = Vec::new();
    for id in telescoping {
        let r = certify_lemma(id).expect("certificate runs");
        if !r.certified() {
            pass = false;
            failed.push(id.id());
        }
    }
    for (id, m0) in brackets {
        let r = certify_lemma(id).expect("certificate runs");
        let on_ray = r.claims.iter().all(|c| c.certificate.ray_start == int(m0));
        if !(r.certified() && on_ray) {
            pass = false;
            failed.push(id.id());
        }
    }
    Line {
        pass,
        expected: pass,
        detail: if failed.is_empty() {
            "lemmas 2,4,6,8,10,12 telescoping signs proven; brackets 3 (m>=41), 7 (m>=2), 11 (m>=1) certified".into()
        } else {
            format!("not certified: {failed:?}")
        },
    }
}

fn criterion6() -> Line {
    let t = pi_bbp();
    let (cf, _) = build_correction(&t, 9).expect("pi correction");
    let e9 = error_term(&t, &cf, 20, default_n_ref(20)).expect("E_9(20)").abs();
    let alpha = alpha_enclosure(&t, default_n_ref(20)).expect("alpha");
    let plain = alpha.shift(&-(partial_sum(&t, 20) * &t.prefactor)).abs();
    let factor = &plain.lo / &e9.hi;
    let floor = cfaccel_core::exact::rational::pow(&int(10), 15);
    let pass = factor > floor;
    Line {
        pass,
        expected: pass,
        detail: format!("certified |tail| / |E_9(20)| >= {} (floor 1e15)", to_sci_string(&factor, 3)),
    }
}

fn criterion7() -> Line {
    let (cf, _) = build_correction(&catalan_bbp(), 4).expect("catalan correction");
    let d = digits(&catalan_bbp(), Some(&cf), 12, 10).expect("digits");
    let pass = d.text.starts_with("0.915965594") && d.certified >= 9;
    Line {
        pass,
        expected: pass,
        detail: format!("{} certified digits: {}", d.certified, d.text),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Line); 7] = [
        ("coefficient tables", criterion1),
        ("closed-form families", criterion2),
        ("rate limits", criterion3),
        ("theorem bounds", criterion4),
        ("lemma certificates", criterion5),
        ("acceleration", criterion6),
        ("digit output", criterion7),
    ];
    let lines: Vec<Line> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(_, f)| s.spawn(f)).collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut unexpected = 0;
    for (i, ((name, _), line)) in criteria.iter().zip(&lines).enumerate() {
        let tag = match (line.pass, line.expected) {
            (true, _) => "PASS",
            (false, true) => "FAIL (analysed)",
            (false, false) => "FAIL (unexpected)",
        };
        if !line.expected {
            unexpected += 1;
        }
        println!("criterion {} {name}: {tag} - {}", i + 1, line.detail);
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!("acceptance: {passed}/7 pass, {unexpected} unexpected");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
