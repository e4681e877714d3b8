use lck_core::catalog::{run_suite, CatalogError};
use lck_core::report::Verdict;

fn assert_suite(name: &str) {
    let report = run_suite(name).expect("known suite");
    println!("{report}");
    assert!(report.all_passed(), "{name} has failures:\n{report}");
}

#[test]
fn u2_classification_passes() {
    assert_suite("u2_classification");
}

/// Every claim reproduces except definiteness for all mu in case (i):
/// the metric is indefinite whenever mu1 < 0.
#[test]
fn gl2_classification_passes_except_case_i_definiteness() {
    let report = run_suite("gl2_classification").expect("known suite");
    println!("{report}");
    let failures: Vec<_> = report.failures().map(|c| c.name.as_str()).collect();
    assert_eq!(failures, vec!["case (i): metric definite for every mu"]);
    let check = report
        .find("case (i): metric definite for every mu")
        .unwrap();
    let witness = check.witness.as_deref().unwrap();
    assert!(witness.contains("mu1=-"), "{witness}");
    assert!(
        report
            .find("case (i): metric definite exactly when mu1 > 0")
            .unwrap()
            .verdict
            == Verdict::Pass
    );
}

#[test]
fn reductive_identities_pass() {
    assert_suite("reductive_identities");
}

#[test]
fn unknown_suite_is_an_error() {
    assert!(matches!(
        run_suite("nosuch"),
        Err(CatalogError::UnknownSuite(_))
    ));
}
