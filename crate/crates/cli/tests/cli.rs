use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;

use lck_cli::document::Document;
use lck_core::exterior::KForm;
use lck_core::scalars::{Monomial, Poly, Scalar};

fn lck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lck"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn data(name: &str) -> String {
    tests_dir().join("data").join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Compares with the golden file; `UPDATE_GOLDEN=1` rewrites it instead.
fn golden(name: &str, actual: &str) {
    let path = tests_dir().join("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

#[test]
fn catalog_documents_match_golden() {
    for id in ["u2", "gl2r", "su2", "sl2r"] {
        let o = lck(&["catalog", id, "--emit"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        golden(&format!("catalog_{id}.json"), &stdout(&o));
    }
}

#[test]
fn golden_documents_round_trip() {
    for id in ["u2", "gl2r", "su2", "sl2r"] {
        let path = tests_dir()
            .join("golden")
            .join(format!("catalog_{id}.json"));
        let text = std::fs::read_to_string(path).unwrap();
        let doc = Document::from_json(&text).unwrap();
        assert_eq!(doc.to_json(), text);
        assert_eq!(Document::from_json(&doc.to_json()).unwrap(), doc);
        let catalog = Document::from_catalog(&lck_core::catalog::get(id).unwrap());
        assert_eq!(doc, catalog);
    }
}

#[test]
fn suites_match_golden_and_exit_codes() {
    for (name, code) in [
        ("u2_classification", 0),
        ("gl2_classification", 1),
        ("reductive_identities", 0),
    ] {
        let o = lck(&["suite", name]);
        assert_eq!(o.status.code(), Some(code), "{name}");
        golden(&format!("suite_{name}.txt"), &stdout(&o));
    }
}

#[test]
fn json_report_agrees_with_exit_code() {
    let o = lck(&["suite", "gl2_classification", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let fails = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["verdict"] == "FAIL")
        .count();
    assert_eq!(fails, 1);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn corrupted_algebra_exits_nonzero_with_witness() {
    let o = lck(&["check-algebra", &data("corrupted_algebra.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Jacobi identity fails on (e0, e2, e3)"));

    let o = lck(&["check-algebra", &data("not_antisymmetric.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("antisymmetry fails on (x, y)"));
}

#[test]
fn valid_algebra_exits_zero() {
    let o = lck(&["check-algebra", &data("heisenberg.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = lck(&[
        "check-lck",
        &data("heisenberg.json"),
        "omega",
        "J",
        "--at",
        "s=1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("metric signature: (4, 0), definite"));
}

#[test]
fn parse_errors_carry_location() {
    let o = lck(&["check-algebra", &data("bad_literal.json")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("algebra.brackets[0].coeffs.y"), "{err}");
    assert!(err.contains("column 7"), "{err}");
}

#[test]
fn missing_file_and_unknown_command_are_errors() {
    assert_eq!(
        lck(&["check-algebra", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    assert_eq!(lck(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lck(&["suite", "nosuch"]).status.code(), Some(2));
    assert_eq!(lck(&["catalog", "nosuch"]).status.code(), Some(2));
}

#[test]
fn excluded_locus_is_an_error() {
    let doc = tests_dir()
        .join("golden/catalog_u2.json")
        .display()
        .to_string();
    let o = lck(&["check-lck", &doc, "omega", "J_ab", "--at", "a=0,b=0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("denominator vanishes at a=0, b=0"));
}

#[test]
fn degenerate_form_reports_rank() {
    let doc = tests_dir()
        .join("golden/catalog_u2.json")
        .display()
        .to_string();
    let o = lck(&["check-lcs", &doc, "e0^e1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rank 2 on quotient of dimension 4"));
}

#[test]
fn symbolic_signature_is_skipped_until_specialized() {
    let doc = tests_dir()
        .join("golden/catalog_u2.json")
        .display()
        .to_string();
    let o = lck(&["check-lck", &doc, "omega", "J_ab"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIPPED metric signature"));
    let o = lck(&[
        "check-lck",
        &doc,
        "omega",
        "J_ab",
        "--at",
        "a=0,b=-1",
        "--convention",
        "thm",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("metric signature: (4, 0), definite"));
}

#[test]
fn vaisman_verdicts() {
    let doc = tests_dir()
        .join("golden/catalog_gl2r.json")
        .display()
        .to_string();
    let yes = lck(&[
        "check-vaisman",
        &doc,
        "omega_a",
        "J_mu",
        "--at",
        "mu1=1,mu2=0,a_h=0,a_p=1,a_m=-1",
    ]);
    assert_eq!(yes.status.code(), Some(0), "{}", stdout(&yes));
    let no = lck(&[
        "check-vaisman",
        &doc,
        "omega_a",
        "J_mu",
        "--at",
        "mu1=1,mu2=0,a_h=0,a_p=-1,a_m=2",
    ]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).contains("FAIL    nabla xi = 0"));
}

#[test]
fn cohomology_command() {
    let doc = tests_dir()
        .join("golden/catalog_u2.json")
        .display()
        .to_string();
    let o = lck(&["cohomology", &doc, "--lambda", "-e0", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim H^1_lambda: 0"));
    let o = lck(&["cohomology", &doc, "--lambda", "e1", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn constructed_document_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("orbit.json").display().to_string();
    let su2 = tests_dir()
        .join("golden/catalog_su2.json")
        .display()
        .to_string();
    let o = lck(&["construct-orbit", &su2, "--phi", "e1", "--emit", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let doc = Document::from_json(&text).unwrap();
    assert_eq!(doc.to_json(), text);
    assert_eq!(doc.algebra.basis_names()[0], "D");
    let o = lck(&["check-lcs", &out, "omega"]);
    assert_eq!(o.status.code(), Some(0));

    let sl2 = tests_dir()
        .join("golden/catalog_sl2r.json")
        .display()
        .to_string();
    let o = lck(&["construct-orbit", &sl2, "--phi", "ep"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("conical"));
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    let poly = prop::collection::vec((0u32..3, 0u32..3, -5i64..=5), 0..3).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|(i, j, c)| {
            (
                Monomial::from_exponents(vec![i, j]),
                num_rational::BigRational::from_integer(c.into()),
            )
        }))
    });
    let den = prop::sample::select(vec![
        Poly::one(),
        Poly::var(1),
        &Poly::var(0) + &Poly::from_int(3),
        &(&Poly::var(0) * &Poly::var(0)) + &Poly::one(),
    ]);
    (poly, den).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn documents_round_trip(
        coeffs in prop::collection::vec(scalar_strategy(), 6),
        bracket in prop::collection::vec(scalar_strategy(), 4),
        endo in prop::collection::vec(scalar_strategy(), 16),
    ) {
        let text = std::fs::read_to_string(tests_dir().join("golden/catalog_u2.json")).unwrap();
        let mut doc = Document::from_json(&text).unwrap();
        doc.params = lck_core::scalars::Params::new(["a", "b"]);
        doc.algebra = doc.algebra.clone().with_params(doc.params.clone());
        doc.algebra.set_bracket(0, 3, bracket);
        doc.forms.clear();
        doc.forms.insert("f".into(), KForm::from_coords(4, 2, &coeffs));
        let rows: Vec<Vec<Scalar>> = endo.chunks(4).map(|c| c.to_vec()).collect();
        doc.endos.clear();
        doc.endos.insert("M".into(), lck_core::linalg::Matrix::from_rows(rows));
        doc.bilinears.clear();
        let emitted = doc.to_json();
        let back = Document::from_json(&emitted).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_json(), emitted);
    }
}
