use cfaccel_core::exact::rational::{int, rat};
use cfaccel_core::exact::{Polynomial, Rational, RationalFunction};
use cfaccel_core::positivity::lemmas::{LemmaStatus, D4};
use cfaccel_core::positivity::*;
use cfaccel_core::series::catalog::pi2_bbp;
use proptest::prelude::*;

fn recip(p: Polynomial) -> RationalFunction {
    RationalFunction::new(Polynomial::one(), p).unwrap()
}

#[test]
fn linear_on_ray() {
    let f = RationalFunction::from_poly(Polynomial::from_ints(&[-4, 1]));
    let c = prove_sign_on_ray(&f, &int(5)).unwrap();
    assert_eq!(c.verdict, Verdict::ProvenPositive);
    assert_eq!(c.witness_shift, int(5));
}

#[test]
fn small_lemma_differences() {
    // u(m) - u(m+1)/4096 - 1/m^13 with u = 1/((4095/4096) m^13 + (13/4096) m^12)
    let u = recip(&Polynomial::monomial(rat(4095, 4096), 13) + &Polynomial::monomial(rat(13, 4096), 12));
    let p = TailBoundPair {
        u: u.clone(),
        v: u,
        power: 13,
        shift: int(0),
        q: int(4096),
    };
    let c = prove_sign_on_ray(&p.telescoping_difference(&p.u), &int(1)).unwrap();
    assert_eq!(c.verdict, Verdict::ProvenNegative);
}

#[test]
fn every_lemma_certifies_on_its_stated_ray() {
    for id in LemmaId::ALL {
        let r = certify_lemma(id).unwrap();
        assert_eq!(r.status(), LemmaStatus::Certified, "{}: {:#?}", id.id(), r.notes);
        for c in r.claims.iter().filter(|c| c.required) {
            assert_eq!(c.certificate.verdict, c.expected, "{}: {}", id.id(), c.label);
        }
    }
}

#[test]
fn bracket_constants_match_the_solver() {
    for id in [LemmaId::Lemma3, LemmaId::Lemma7, LemmaId::Lemma11] {
        let d = certify_lemma(id).unwrap().d_check.unwrap();
        assert!(d.equal && d.same_sign && d.within_offsets, "{}: {d:?}", id.id());
    }
}

#[test]
fn full_pi2_term_does_not_own_the_bracket_constant() {
    let d4: Rational = cfaccel_core::exact::rational::parse_rational(D4).unwrap();
    let r = certify_second_order_bracket(&pi2_bbp(), 3, &d4, &rat(1, 2), &int(0), 1).unwrap();
    assert!(!r.d_check.equal);
}

#[test]
fn lemma2_v_variants() {
    let r = certify_lemma(LemmaId::Lemma2VVariant).unwrap();
    assert_eq!(r.claims.len(), 2);
    assert!(r.claims[0].required && r.claims[0].holds());
    assert!(!r.claims[1].required);
    assert_eq!(r.claims[1].certificate.verdict, Verdict::Unknown);
    assert!(r.notes[1].ends_with("certified from m >= 17"), "{}", r.notes[1]);
}

#[test]
fn success_persists_under_further_shift() {
    for id in [LemmaId::Lemma2, LemmaId::Lemma6, LemmaId::Lemma8, LemmaId::Lemma12] {
        for c in certify_lemma(id).unwrap().claims {
            let cert = &c.certificate;
            let later = prove_sign_on_ray(&cert.subject, &(&cert.witness_shift + int(1))).unwrap();
            assert_eq!(later.verdict, cert.verdict, "{}", c.label);
        }
    }
}

#[test]
fn tail_bound_needs_decay() {
    let one = RationalFunction::one();
    let p = TailBoundPair {
        u: one.clone(),
        v: one,
        power: 2,
        shift: int(0),
        q: int(2),
    };
    let r = certify_tail_bound(&p, 1).unwrap();
    assert!(!r.certified());
}

#[test]
fn certificate_json() {
    let r = certify_lemma(LemmaId::Lemma6).unwrap();
    let v = r.claims[0].certificate.to_json();
    for key in ["subject_hash", "m0", "verdict", "witness_shift", "prefix_points"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let h = v["subject_hash"].as_str().unwrap();
    assert_eq!(h.len(), 64);
    assert_eq!(h, certify_lemma(LemmaId::Lemma6).unwrap().claims[0].certificate.subject_hash());
    assert_eq!(r.to_json()["status"], "certified");
}

fn factor_product() -> impl Strategy<Value = (RationalFunction, i64)> {
    let factor = (1i64..4, -30i64..30);
    (
        prop::collection::vec(factor.clone(), 1..5),
        prop::collection::vec(factor, 0..4),
        prop::sample::select(vec![-3i64, -1, 1, 2]),
        0i64..25,
    )
        .prop_map(|(nums, dens, c, m0)| {
            let build = |fs: &Vec<(i64, i64)>| {
                fs.iter()
                    .fold(Polynomial::constant(int(1)), |acc, &(a, b)| &acc * &Polynomial::from_ints(&[b, a]))
            };
            let mut den = build(&dens);
            // keep the ray free of poles
            if dens.iter().any(|&(a, b)| (-b) % a == 0 && -b / a >= m0) {
                den = Polynomial::one();
            }
            let f = RationalFunction::new(build(&nums).scale(&int(c)), den).unwrap();
            (f, m0)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn proven_verdicts_are_sound((f, m0) in factor_product(), points in prop::collection::vec(0i64..1_000_000, 50)) {
        let cert = prove_sign_on_ray(&f, &int(m0)).unwrap();
        if cert.verdict != Verdict::Unknown {
            for p in points {
                let v = f.eval(&int(m0 + p)).unwrap();
                let want = if cert.verdict == Verdict::ProvenPositive { v > int(0) } else { v < int(0) };
                prop_assert!(want, "m={} f={}", m0 + p, f);
            }
        }
    }
}
