use cfaccel_core::evaluator::*;
use cfaccel_core::exact::rational::{int, pow, rat};
use cfaccel_core::exact::Rational;
use cfaccel_core::series::catalog::*;
use cfaccel_core::solver::*;
use std::cmp::Ordering;

fn r(n: u64) -> Rational {
    int(n as i64)
}

#[test]
fn partial_sums() {
    assert_eq!(partial_sum(&pi_bbp(), 1), rat(47, 15));
    assert_eq!(partial_sum(&ln2_mercator(), 3), rat(5, 8));
    for e in catalog() {
        assert_eq!(partial_sum(&e.term, e.term.start_index), int(0));
    }
}

#[test]
fn correction_values() {
    let (cf, _) = build_correction(&pi_bbp(), 0).unwrap();
    assert_eq!(mc_eval(&cf, &int(1)).unwrap(), rat(8, 57));
    let (cf, _) = build_correction(&ramanujan_inv_pi(), 0).unwrap();
    assert_eq!(mc_eval(&cf, &int(0)).unwrap(), rat(128, 27));
}

#[test]
fn zero_levels_is_the_head() {
    let (cf, _) = build_correction(&pi_bbp(), 3).unwrap();
    let head = cf.truncated(0);
    for n in 0..10 {
        let x = int(n);
        let direct = &head.lambda0 / head.head_poly.eval(&x);
        assert_eq!(mc_eval(&head, &x).unwrap(), direct);
    }
}

#[test]
fn pole_names_the_level() {
    let (cf, _) = build_correction(&pi_bbp(), 1).unwrap();
    // level 1 is 21/64 / (n + 15/7)
    let err = mc_eval(&cf, &rat(-15, 7)).unwrap_err();
    assert_eq!(err, EvalError::Pole { level: 1, n: rat(-15, 7) });
    assert!(err.to_string().contains("level 1"));
}

#[test]
fn pi_enclosure_width() {
    let a = alpha_enclosure(&pi_bbp(), 40).unwrap();
    assert!(a.width() < pow(&int(16), -39));
    assert!(a.contains(&(partial_sum(&pi_bbp(), 300))));
}

#[test]
fn ln2_enclosure_contains_deeper_sum() {
    let a = alpha_enclosure(&ln2_mercator(), 40).unwrap();
    assert!(a.contains(&partial_sum(&ln2_mercator(), 200)));
}

#[test]
fn enclosures_nest() {
    for e in catalog() {
        let t = &e.term;
        match alpha_enclosure(t, 20) {
            Ok(a) => {
                let b = alpha_enclosure(t, 30).unwrap();
                let c = alpha_enclosure(t, 75).unwrap();
                assert!(b.width() < a.width(), "{}", t.name);
                assert!(a.contains_enclosure(&b) && b.contains_enclosure(&c), "{}", t.name);
            }
            // Kernels tending to 1 admit no geometric majorant.
            Err(err) => {
                assert_eq!(t.kernel().limit_at_infinity(), Some(int(1)), "{}", t.name);
                assert_eq!(err.to_string(), "cannot certify tail at N=20");
            }
        }
    }
}

#[test]
fn telescoping_identity_closes() {
    for e in catalog() {
        let t = &e.term;
        let kernel = t.kernel();
        for k in 0..=3 {
            let (cf, _) = build_correction(t, k).unwrap();
            let residual = residual_function(t, &cf);
            for m in t.start_index.max(1)..=30 {
                let x = r(m);
                let (Ok(here), Ok(next)) = (mc_eval(&cf, &x), mc_eval(&cf, &(&x + int(1)))) else {
                    continue;
                };
                let lhs = here - kernel.eval(&x).unwrap() * next - t.r.eval(&x).unwrap();
                assert_eq!(lhs, residual.eval(&x).unwrap(), "{} k={k} m={m}", t.name);
            }
        }
    }
}

fn sign_of(c: &Rational) -> Ordering {
    c.cmp(&int(0))
}

#[test]
fn error_sign_follows_residual_constant() {
    let cases: [(fn() -> cfaccel_core::series::BBPTerm, Vec<usize>, [u64; 2]); 3] = [
        (pi_bbp, (0..=9).collect(), [88, 100]),
        (catalan_bbp, vec![4], [12, 20]),
        (pi2_bbp, vec![3], [15, 25]),
    ];
    for (term, ks, ns) in cases {
        let t = term();
        for k in ks {
            let (cf, info) = build_correction(&t, k).unwrap();
            for n in ns {
                let e = error_term(&t, &cf, n, default_n_ref(n)).unwrap();
                assert_eq!(e.strict_sign(), Some(sign_of(&info.ck)), "{} k={k} n={n}", t.name);
            }
        }
    }
}

#[test]
fn each_level_helps_at_moderate_n() {
    let t = pi_bbp();
    let (full, _) = build_correction(&t, 9).unwrap();
    let errs: Vec<Enclosure> = (0..=9)
        .map(|k| error_term(&t, &full.truncated(k), 30, default_n_ref(30)).unwrap().abs())
        .collect();
    for k in 1..=9 {
        assert!(errs[k].hi < errs[k - 1].lo, "k={k}");
    }
}

#[test]
fn pi_first_error_is_negative() {
    let (cf, _) = build_correction(&pi_bbp(), 0).unwrap();
    let e = error_term(&pi_bbp(), &cf, 10, default_n_ref(10)).unwrap();
    assert_eq!(e.strict_sign(), Some(Ordering::Less));
}

#[test]
fn rate_limit_constants() {
    let (_, info) = build_correction(&pi_bbp(), 0).unwrap();
    assert_eq!(rate_limit_constant(&pi_bbp(), &info).unwrap(), rat(-21, 256));
    let (_, info) = build_correction(&catalan_bbp(), 0).unwrap();
    assert_eq!(rate_limit_constant(&catalan_bbp(), &info).unwrap(), &info.ck / int(4095));
    let (_, info) = build_correction(&ramanujan_inv_pi(), 0).unwrap();
    assert_eq!(rate_limit_constant(&ramanujan_inv_pi(), &info).unwrap(), rat(2, 81));
    let (_, info) = build_correction(&inverse_squares_4m1(), 0).unwrap();
    assert!(matches!(
        rate_limit_constant(&inverse_squares_4m1(), &info),
        Err(EvalError::NoRateLimit(_))
    ));
}

#[test]
fn pi_rate_and_monotone_approach() {
    let t = pi_bbp();
    let (cf, info) = build_correction(&t, 0).unwrap();
    let rc = rate_check(&t, &cf, &info, &[50], &default_rel_tol()).unwrap();
    assert!(rc.passed());
    let rc = rate_check(&t, &cf, &info, &[20, 40, 80], &rat(1, 2)).unwrap();
    assert!(rc.monotone);
    assert_eq!(rc.reports.iter().map(|r| r.n).collect::<Vec<_>>(), [20, 40, 80]);
    // scaled is E times n^K0 q^n exactly
    let rep = &rc.reports[0];
    let s = rate_scale(&t, info.k0, 20);
    assert_eq!(rep.scaled, rep.e.scale(&s));
    assert_eq!(s, pow(&int(16), 20) * pow(&int(20), 5));
}

#[test]
fn ramanujan_rate_with_factorial_scale() {
    let t = ramanujan_inv_pi();
    let (cf, info) = build_correction(&t, 0).unwrap();
    let rc = rate_check(&t, &cf, &info, &[60], &rat(1, 5)).unwrap();
    assert!(rc.passed());
    assert_eq!(rc.reports[0].expected_limit, rat(2, 81));
}

#[test]
fn error_report_json() {
    let t = pi_bbp();
    let (cf, info) = build_correction(&t, 1).unwrap();
    let rc = rate_check(&t, &cf, &info, &[30], &rat(1, 2)).unwrap();
    let v = rc.reports[0].to_json();
    for key in ["fixture", "k", "n", "E_lo", "E_hi", "scaled_lo", "scaled_hi", "expected", "pass"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    // 16 C_1 / 15
    assert_eq!(v["expected"], "-795/14336");
    assert!(v["E_lo"].as_str().unwrap().contains('/'));
}

#[test]
fn digit_output() {
    let d = digits(&pi_bbp(), None, 2, 10).unwrap();
    assert!(d.text.starts_with("3.14"), "{}", d.text);
    let (cf, _) = build_correction(&catalan_bbp(), 4).unwrap();
    let d = digits(&catalan_bbp(), Some(&cf), 12, 10).unwrap();
    assert!(d.text.starts_with("0.915965594"), "{}", d.text);
    assert!(d.certified >= 9);
    let d = digits(&pi_bbp(), None, 0, 10).unwrap();
    assert_eq!((d.text.as_str(), d.certified), ("0", 0));
    let d = digits(&pi_bbp(), None, 10, 16).unwrap();
    assert!(d.text.starts_with("3.243f6a88"), "{}", d.text);
}

#[test]
fn certified_digits_are_shared_by_the_whole_hull() {
    let (cf, _) = build_correction(&pi_bbp(), 2).unwrap();
    for n in [3, 7, 15] {
        let d = digits(&pi_bbp(), Some(&cf), n, 10).unwrap();
        let scale = pow(&int(10), d.certified as i64);
        let lo = (&d.hull.lo * &scale).floor();
        let hi = (&d.hull.hi * &scale).floor();
        assert_eq!(lo, hi);
        assert_ne!((&d.hull.lo * &scale * int(10)).floor(), (&d.hull.hi * &scale * int(10)).floor());
        assert_eq!(d.text.replace('.', ""), lo.to_integer().to_string());
    }
}

#[test]
fn theorem_examples() {
    assert!(theorem_bounds_check(TheoremFixture::Thm2, &[88, 90, 100]).unwrap().passed());
    assert!(theorem_bounds_check(TheoremFixture::Thm4, &[12, 20, 40]).unwrap().passed());
    assert!(theorem_bounds_check(TheoremFixture::Thm6, &[15, 25, 50]).unwrap().passed());
    let below = theorem_bounds_check(TheoremFixture::Thm4, &[11]).unwrap();
    assert_eq!(below.checks[0].outcome, BoundOutcome::BelowThreshold);
    assert!(!below.passed());
}

#[test]
fn reference_default() {
    assert_eq!(default_n_ref(10), 70);
    assert_eq!(default_n_ref(100), 400);
}
