use magnus::classify::{verify, Status, VerifyParams};

fn pass(claim: &str, params: &VerifyParams) -> magnus::classify::ClaimReport {
    let r = verify(claim, params).unwrap();
    assert_eq!(r.status, Status::Pass, "{claim}: {:?}", r.failures().take(5).collect::<Vec<_>>());
    r
}

#[test]
fn frattini_lemma_holds_on_the_corpus() {
    let r = pass("frattini-lemma", &VerifyParams::default());
    assert!(r.count("instances (K > N)") > 0);
}

#[test]
fn frobenius_products() {
    let r = pass("frobenius-products", &VerifyParams::default());
    assert!(r.count("products MP as claimed") > 0);
    // C3 minus the identity is two classes.
    assert!(r.evidence.iter().any(|e| e.subject == "C(3)" && e.detail.contains("classes")));
}

#[test]
fn smp_products() {
    let r = pass("smp-products", &VerifyParams::default());
    assert_eq!(r.count("factors B are SMP"), 5);
    assert_eq!(r.count("MP equivalence"), r.count("SMP equivalence"));
}

#[test]
fn reports_do_not_depend_on_jobs() {
    for claim in ["mpdir-pairs", "primitive-mp"] {
        let a = verify(claim, &VerifyParams { jobs: 1, ..Default::default() }).unwrap();
        let b = verify(claim, &VerifyParams { jobs: 3, ..Default::default() }).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap(), "{claim}");
    }
}

#[test]
fn fitting_emits_derived_length_table() {
    let r = pass("fitting", &VerifyParams::default());
    assert!(r.evidence.iter().any(|e| e.subject.starts_with("derived length") && e.detail.contains("informational")));
}
