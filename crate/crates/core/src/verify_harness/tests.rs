use super::*;

#[test]
fn samples_are_deterministic() {
    let ctx = FqContext::from_order(3).unwrap();
    let a = SampleSpec::new(3, 20, 7).points(&ctx);
    let b = SampleSpec::new(3, 20, 7).points(&ctx);
    assert_eq!(a, b);
    assert_ne!(a, SampleSpec::new(3, 20, 8).points(&ctx));
    assert_eq!(a.len(), edge_cases(&ctx).len() + 20);
}

#[test]
fn distinct_binders_diverge() {
    let case = distinct_binder_fixture().unwrap();
    assert_eq!(case.status, CaseStatus::ExpectedDivergence, "{}", case.detail);
}

#[test]
fn kochen_skips_characteristic_two() {
    let r = check_kochen(&SampleSpec::new(4, 5, 1), 1).unwrap();
    assert!(r.skipped.is_some() && r.cases.is_empty());
}

#[test]
fn small_suites_pass() {
    for name in SUITES {
        for q in [2, 3] {
            let r = run_suite(name, &SampleSpec::new(q, 10, 1)).unwrap();
            let bad: Vec<_> = r.cases.iter().filter(|c| matches!(c.status, CaseStatus::Fail | CaseStatus::Unknown)).collect();
            assert!(r.passed(), "{}: {bad:#?}", r.summary());
        }
    }
}
