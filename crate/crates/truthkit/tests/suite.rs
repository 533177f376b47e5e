use truthkit::fibered::{check_law, run_suite, verify_adjunction, Bundle, SuiteConfig, ADJUNCTION_IDS, LAW_IDS};
use truthkit::gen;
use truthkit::Limits;

#[test]
fn every_law_holds_on_the_default_suite() {
    let reports = run_suite("all", &SuiteConfig::default(), &Limits::default()).unwrap();
    assert_eq!(reports.len(), LAW_IDS.len());
    for r in &reports {
        assert!(r.passed, "{}: {}", r.law, serde_json::to_string(&r.counterexample).unwrap());
    }
}

#[test]
fn suite_is_deterministic_per_seed() {
    let cfg = SuiteConfig { seed: 99, max_types: 3, bundles: 10 };
    let a = serde_json::to_string(&run_suite("all", &cfg, &Limits::default()).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite("all", &cfg, &Limits::default()).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn adjunctions_hold_on_random_bundles() {
    let l = Limits::default();
    let mut r = gen::rng(17);
    for k in 0..25 {
        let b = Bundle::random(&mut r, 3, format!("b{k}"));
        for id in ADJUNCTION_IDS {
            let rep = verify_adjunction(id, &b, &l).unwrap();
            assert!(rep.passed, "{id} on {}: {:?}", b.label, rep.counterexample);
        }
    }
}

#[test]
fn single_law_suites_and_unknown_ids() {
    let l = Limits::default();
    let one = run_suite("ext-lax", &SuiteConfig { bundles: 5, ..SuiteConfig::default() }, &l).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(run_suite("nope", &SuiteConfig::default(), &l).unwrap_err().kind(), "UnknownLaw");
    assert_eq!(check_law("nope", &Bundle::fixture(), &l).unwrap_err().kind(), "UnknownLaw");
}
