use std::process::Command;

use loopder::format::{
    load_algebra, load_setup, parse_element, parse_field, render_element, AlgebraFile, AutomorphismFile, SetupFile,
};
use loopder::report::ReportJson;
use loopder::run;
use loopder_core::laurent::Style;
use loopder_core::{catalog, Algebra, Field};
use proptest::prelude::*;

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("loopder-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn derive_reports_dimension_three_for_sl2() {
    let out = run(["derive", "--algebra", "sl2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("dim D = 3"), "{}", out.stdout);
    assert_eq!(out.stdout.matches("D basis").count(), 3);
}

#[test]
fn centroid_and_differential_centroid_of_sl2_are_scalars() {
    for cmd in ["centroid", "dcentroid"] {
        let out = run([cmd, "--algebra", "sl2", "--json"]);
        let r: ReportJson = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(r.dimensions.values().copied().collect::<Vec<_>>(), vec![1]);
    }
}

#[test]
fn flagship_verifier_passes_with_six_dimensions() {
    let out = run(["verify-thm2", "--setup", "sl2-twisted-flagship"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("dim D((A(x)S)_0) = 6"));
    assert!(out.stdout.contains("dim graded dimension formula = 6"));
    assert!(out.stdout.contains("PASS pi injective") && out.stdout.contains("PASS pi surjective"));
    assert!(out.stdout.ends_with("verdict: PASS\n"));
}

#[test]
fn graded_and_identity_verifiers_pass_on_the_flagship() {
    for cmd in ["verify-lemma35", "lemma-identities", "fixed", "grade"] {
        let out = run([cmd]);
        assert_eq!(out.code, 0, "{cmd}: {}", out.stderr);
    }
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let path = temp_file("flagship.json", &run(["catalog", "show", "sl2-twisted-flagship"]).stdout);
    let first = run(["verify-thm2", "--setup", &path, "--json"]);
    let second = run(["verify-thm2", "--setup", &path, "--json"]);
    assert_eq!(first.code, 0);
    assert_eq!(first.stdout, second.stdout);
    let r: ReportJson = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(r.verdict, "pass");
    let by_name = run(["verify-thm2", "--setup", "sl2-twisted-flagship", "--json"]);
    assert_eq!(by_name.stdout, first.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(["derive", "--algebra", "no-such-algebra"]).code, 2);
    assert_eq!(run(["no-such-command"]).code, 2);
    assert_eq!(run(["--help"]).code, 0);
    let bad = temp_file("bad.json", "{ \"field\": ");
    assert_eq!(run(["derive", "--algebra", &bad]).code, 2);

    let out = run(["verify-thm2", "--u", "z^2"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("hypothesis (iv)"), "{}", out.stderr);
    let out = run(["verify-thm2", "--setup", "quotient-laurent(2,4)"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("primitive 4-th root"), "{}", out.stderr);
    assert_eq!(run(["verify-thm1", "--algebra", "zero-product(2)", "--s", "dual-numbers"]).code, 3);
}

#[test]
fn earlier_formula_evaluation_reports_leibniz_failures() {
    let out = run(["bm-eval", "--example", "exaBM-laurent", "--json"]);
    assert_eq!(out.code, 0);
    let r: ReportJson = serde_json::from_str(&out.stdout).unwrap();
    assert!(r.dimensions["Leibniz failures on the window |exponent| <= 2m"] > 0);
    assert_eq!(r.values["D(1⊗z^5)"], "4(1⊗z^5)");
}

#[test]
fn phi_eval_accepts_loop_literals_and_finite_setups() {
    let out = run(["phi-eval", "--example", "last-exa-ii", "--m", "2", "--n", "-1", "--at", "1: 3*z^4 + z^-2", "--json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r: ReportJson = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(r.values["phi(d)(1⊗z^-2 + 3(1⊗z^4))"], "-1(1⊗z^-4) + 6(1⊗z^2)");
    let out = run(["phi-eval", "--setup", "sl2-twisted-flagship"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = run(["phi-eval", "--setup", "quotient-laurent(5,4)", "--field", "prime:5:4", "--branch", "charp"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(run(["phi-eval", "--setup", "sl2-twisted-flagship", "--branch", "charp"]).code, 3);
}

#[test]
fn size_guard_requires_force() {
    let out = run(["derive", "--algebra", "sl2", "--s", "group-algebra(14)"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("--force"));
    assert!(run(["derive", "--algebra", "sl2", "--s", "group-algebra(13)"]).code == 0);
}

#[test]
fn catalog_lists_and_shows_every_entry() {
    let out = run(["catalog", "list"]);
    assert_eq!(out.code, 0);
    for name in catalog::ALGEBRAS.iter().chain(catalog::SETUPS).chain(catalog::LOOP_EXAMPLES) {
        assert!(out.stdout.contains(name), "{name}");
    }
    for name in ["sl2", "group-algebra(3)", "quotient-laurent(1,2)", "exaBM-laurent", "last-exa-ii(3,1)"] {
        assert_eq!(run(["catalog", "show", name]).code, 0, "{name}");
    }
}

#[test]
fn binary_exit_status_matches_run() {
    let bin = env!("CARGO_BIN_EXE_loopder");
    let ok = Command::new(bin).arg("counterexample-bm").output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().contains("D(1⊗z^5) = 4(1⊗z^5)"));
    let bad = Command::new(bin).args(["derive", "--algebra", "nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn algebra_files_round_trip_bit_exactly() {
    for f in [Field::rational(), Field::cyclotomic(4).unwrap(), Field::prime(7, 3).unwrap()] {
        for a in catalog::finite_algebras(&f) {
            let file = AlgebraFile::of(&a);
            let text = serde_json::to_string_pretty(&file).unwrap();
            let back: AlgebraFile = serde_json::from_str(&text).unwrap();
            assert_eq!(back, file);
            assert_eq!(back.build().unwrap(), a);
            assert_eq!(serde_json::to_string_pretty(&AlgebraFile::of(&back.build().unwrap())).unwrap(), text);
        }
    }
}

#[test]
fn setup_files_round_trip() {
    let f = Field::rational();
    for name in ["sl2-twisted-flagship", "quotient-laurent(2,2)"] {
        let spec = catalog::setup_by_name(name, &f, Style::Forward).unwrap();
        let text = serde_json::to_string(&SetupFile::of(&spec)).unwrap();
        let back: SetupFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build(&f).unwrap(), spec);
    }
    let minimal = r#"{ "a": "sl2", "s": "group-algebra(2)", "m": 1 }"#;
    let path = temp_file("minimal.json", minimal);
    let spec = load_setup(&path, &f, Style::Forward).unwrap();
    assert_eq!(spec.a, catalog::sl2(&f));
    assert_eq!(run(["verify-thm2", "--setup", &path]).code, 0);
}

#[test]
fn automorphism_files_drive_grade() {
    let file = AutomorphismFile {
        field: None,
        algebra: loopder::format::AlgebraRef::Name("sl2".into()),
        m: 2,
        matrix: vec![
            vec!["-1".into(), "0".into(), "0".into()],
            vec!["0".into(), "1".into(), "0".into()],
            vec!["0".into(), "0".into(), "-1".into()],
        ],
    };
    let path = temp_file("sign.json", &serde_json::to_string(&file).unwrap());
    let out = run(["grade", "--automorphism", &path, "--json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let r: ReportJson = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!((r.dimensions["A_0"], r.dimensions["A_1"]), (1, 2));
    let mut wrong = file;
    wrong.m = 3;
    let path = temp_file("wrong.json", &serde_json::to_string(&wrong).unwrap());
    assert_eq!(run(["grade", "--automorphism", &path]).code, 3);
}

#[test]
fn field_descriptors() {
    assert_eq!(parse_field("rational").unwrap(), Field::rational());
    assert_eq!(parse_field("cyclotomic:8").unwrap(), Field::cyclotomic(8).unwrap());
    assert_eq!(parse_field("prime:13:4").unwrap(), Field::prime(13, 4).unwrap());
    assert!(parse_field("prime:12:4").is_err());
    assert!(parse_field("real").is_err());
}

#[test]
fn element_literals() {
    let f = Field::cyclotomic(4).unwrap();
    let s = catalog::group_algebra(&f, 4);
    let v = parse_element("2*z^2 + [0, 1]*z + 1 + -z^3", &s).unwrap();
    assert_eq!(render_element(&s, &v), "1 + [0, 1]*z + [2, 0]*z^2 + [-1, 0]*z^3");
    assert_eq!(parse_element(&render_element(&s, &v), &s).unwrap(), v);
    assert_eq!(parse_element("0", &s).unwrap(), s.zero());
    assert!(parse_element("w", &s).is_err());
    let q = Field::rational();
    assert_eq!(load_algebra("dual-numbers", &q).unwrap(), catalog::dual_numbers(&q));
}

fn random_algebra(f: &Field, n: usize, coeffs: &[(i64, i64)]) -> Algebra {
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .filter_map(|k| {
                            let (num, den) = coeffs[(i * n + j) * n + k];
                            (num != 0).then(|| (k, f.parse(&format!("{num}/{den}")).unwrap()))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Algebra::new(f, (0..n).map(|k| format!("b{k}")).collect(), table).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_algebra_files_round_trip(
        (n, coeffs) in (1usize..=3).prop_flat_map(|n| (Just(n), proptest::collection::vec((-7i64..=7, 1i64..=9), n * n * n)))
    ) {
        let f = Field::rational();
        let a = random_algebra(&f, n, &coeffs);
        let text = serde_json::to_string(&AlgebraFile::of(&a)).unwrap();
        let back: AlgebraFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.build().unwrap(), a);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
