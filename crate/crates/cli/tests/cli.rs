//! End-to-end tests of the `retractlab` binary: exit codes, golden text
//! reports, JSON schemas and agreement between the two reporters.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the golden files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRng, TestRunner};
use serde_json::Value;

use retractlab::monomial::MonomialTuple;
use retractlab::ExponentVector;

fn manifest() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn corpus(name: &str) -> String {
    manifest().join("../../corpus").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_retractlab"))
        .args(args)
        .env_remove("RETRACTLAB_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json_of(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.push("--json");
    let o = run(&a);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: bad JSON: {e}"));
    (v, code(&o))
}

fn schema(name: &str) -> JSONSchema {
    let path = manifest().join("schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    JSONSchema::compile(&v).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn assert_valid(v: &Value) {
    let name = v["command"].as_str().expect("command field");
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name} report violates its schema:\n{}\n{v:#}", msgs.join("\n"));
}

const EXPMAP3: &str = "x; y + x^2*U; z + y*U + 1/2*x^2*U^2";

/// Invocations with golden text output, expected exit code and schema.
fn cases() -> Vec<(&'static str, Vec<String>, i32)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let mut out = vec![
        ("verify_yes", s(&["verify-retraction", "--field", "Q", "--vars", "x,y", "--images", "x*y^2; 1"]), 0),
        ("verify_no", s(&["verify-retraction", "--images", "x + y; y; z"]), 1),
        ("verify_f2", s(&["verify-retraction", "--field", "F2", "--vars", "a,b", "--images", "a^2 + a*b + b; 0"]), 1),
        ("classify_constant", s(&["classify", "--images", "x; y + x^2*z - x^2; 1"]), 0),
        ("classify_monomial", s(&["classify", "--images", "x*z^2; y; 1"]), 0),
        ("classify_binomial", s(&["classify", "--images", "x + y^2*z; 0; z"]), 0),
        ("classify_two_vars", s(&["classify", "--vars", "x,y", "--images", "x + y^2; 0"]), 0),
        ("classify_not", s(&["classify", "--images", "x + y; y; z"]), 1),
        ("classify_inconclusive", s(&["classify", "--images", "-y + z; -x + z; -x - y + 2*z"]), 0),
        ("enum_n2", s(&["enum-monomial", "--n", "2", "--max-exp", "2"]), 0),
        ("expmap_verify_f5", s(&["expmap", "verify", "--field", "F5", "--vars", "x", "--images", "x + U + U^5"]), 0),
        ("expmap_verify_bad", s(&["expmap", "verify", "--images", "x; y + x*U; z + y*U"]), 1),
        ("expmap_constants", s(&["expmap", "constants", "--images", EXPMAP3, "--bound", "3"]), 0),
        ("expmap_slice", s(&["expmap", "slice", "--images", EXPMAP3, "--bound", "4"]), 0),
        ("expmap_ml", s(&["expmap", "ml", "--images", "x; y + x*U; z", "--images", "x + z*U; y; z", "--bound", "3"]), 0),
        ("grading_effective", s(&["grading", "--weights", "1,2,0", "--gens", "x^2; y; z"]), 0),
        ("grading_trivial", s(&["grading", "--weights", "1,-1", "--gens", "x*y"]), 1),
        ("kernel_yes", s(&["kernel-check", "--images", "x; x^2; z", "--h", "y - x^2", "--bound", "4"]), 0),
        ("kernel_no", s(&["kernel-check", "--images", "x; x^2; z", "--h", "y - x", "--bound", "4"]), 1),
        ("member_yes", s(&["member", "--gens", "x; y^2", "--f", "x^3 + y^4 - 2", "--bound", "4"]), 0),
        ("member_no", s(&["member", "--gens", "x; y^2", "--f", "y", "--bound", "4"]), 1),
        ("dependence_found", s(&["dependence", "--gens", "x; x^2; y", "--bound", "3"]), 0),
        ("dependence_none", s(&["dependence", "--gens", "x; y", "--bound", "3"]), 0),
        ("normalize_yes", s(&["normalize", "--vars", "x,y", "--images", "x + 2*y^2; 0"]), 0),
    ];
    out.push((
        "enum_n3_match",
        vec![
            "enum-monomial".into(),
            "--n".into(),
            "3".into(),
            "--max-exp".into(),
            "2".into(),
            "--match-corpus".into(),
            corpus("monomial-n3.txt"),
        ],
        0,
    ));
    out
}

fn golden_path(name: &str) -> PathBuf {
    manifest().join("tests/golden").join(format!("{name}.txt"))
}

#[test]
fn golden_reports_and_exit_codes() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (name, args, expected) in cases() {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&a);
        assert_eq!(code(&o), expected, "{name}: stderr {}", String::from_utf8_lossy(&o.stderr));
        // The corpus path depends on the checkout location.
        let text = stdout(&o).replace(&corpus("monomial-n3.txt"), "corpus/monomial-n3.txt");
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(text, want, "{name} differs from {}", path.display());
    }
}

#[test]
fn json_reports_match_schemas_and_exit_codes() {
    for (name, args, expected) in cases() {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let (v, c) = json_of(&a);
        assert_eq!(c, expected, "{name}");
        assert_valid(&v);
    }
}

#[test]
fn every_schema_is_exercised() {
    let mut seen = std::collections::BTreeSet::new();
    for (_, args, _) in cases() {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let (v, _) = json_of(&a);
        seen.insert(v["command"].as_str().unwrap().to_string());
    }
    let mut shipped = Vec::new();
    for e in std::fs::read_dir(manifest().join("schemas")).unwrap() {
        let name = e.unwrap().file_name().into_string().unwrap();
        shipped.push(name.trim_end_matches(".schema.json").to_string());
    }
    shipped.sort();
    let seen: Vec<String> = seen.into_iter().collect();
    assert_eq!(seen, shipped);
}

#[test]
fn documented_examples() {
    let o = run(&["verify-retraction", "--field", "Q", "--vars", "x,y", "--images", "x*y^2; 1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("retraction: yes"));

    let (v, c) = json_of(&["expmap", "verify", "--field", "F5", "--vars", "x", "--images", "x + U + U^5"]);
    assert_eq!(c, 0);
    assert_eq!(v["axiom_i_ok"], true);
    assert_eq!(v["axiom_ii_ok"], true);

    let o = run(&["enum-monomial", "--n", "3", "--max-exp", "2", "--match-corpus", &corpus("monomial-n3.txt")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("37/37 families matched, 0 unmatched tuples"), "{}", stdout(&o));
}

#[test]
fn plain_and_json_agree() {
    for (name, args, _) in cases() {
        let a: Vec<&str> = args.iter().map(String::as_str).collect();
        let text = stdout(&run(&a));
        let (v, _) = json_of(&a);
        let line = |key: &str| {
            text.lines()
                .find_map(|l| l.strip_prefix(key))
                .unwrap_or_else(|| panic!("{name}: no line {key:?} in\n{text}"))
                .to_string()
        };
        match v["command"].as_str().unwrap() {
            "verify-retraction" => {
                let yes = v["retraction"].as_bool().unwrap();
                assert_eq!(line("retraction: "), if yes { "yes" } else { "no" }, "{name}");
                assert_eq!(text.matches("defect f").count(), v["defects"].as_array().unwrap().len());
            }
            "classify" => {
                let status = v["status"].as_str().unwrap().replace('_', " ");
                assert_eq!(line("status: "), status, "{name}");
                if let Some(d) = v["dim"].as_u64() {
                    assert!(line("dimension: ").starts_with(&d.to_string()), "{name}");
                    let w: Vec<&str> = v["witnesses"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
                    assert_eq!(line("witnesses: "), w.join("; "), "{name}");
                }
                assert_eq!(text.matches("\n  - ").count(), v["attempted"].as_array().unwrap().len(), "{name}");
            }
            "enum-monomial" => {
                let count = v["count"].as_u64().unwrap();
                assert!(text.lines().next().unwrap().contains(&format!(": {count} tuples")), "{name}");
                if let Some(m) = v["match"].as_object() {
                    assert_eq!(text.lines().last().unwrap(), m["summary"].as_str().unwrap(), "{name}");
                }
            }
            "expmap-verify" => {
                for (key, label) in [("axiom_i_ok", "axiom (i)"), ("axiom_ii_ok", "axiom (ii)")] {
                    let l = text.lines().find(|l| l.starts_with(label)).unwrap();
                    assert_eq!(l.ends_with("pass"), v[key].as_bool().unwrap(), "{name}");
                }
            }
            "expmap-constants" | "expmap-ml" => {
                let dim = v["dimension"].as_u64().unwrap() as usize;
                assert!(text.contains(&format!("dimension {dim}\n")), "{name}");
                let basis: Vec<&str> = v["basis"].as_array().unwrap().iter().map(|b| b.as_str().unwrap()).collect();
                let tail: Vec<&str> = text.lines().rev().take(dim).collect::<Vec<_>>().into_iter().rev().collect();
                assert_eq!(tail, basis, "{name}");
            }
            "expmap-slice" => {
                assert_eq!(line("slice: "), v["slice"]["slice"].as_str().unwrap(), "{name}");
                assert_eq!(line("sigma-degree: "), v["slice"]["degree"].to_string(), "{name}");
                let certified = v["localization"]["certified"].as_bool().unwrap();
                assert_eq!(line("localization up to degree 4: ") == "certified", certified, "{name}");
            }
            "grading" => {
                let yes = v["effective"].as_bool().unwrap();
                assert_eq!(line("induced grading effective (A_0 != A): "), if yes { "yes" } else { "no" });
                let degrees: Vec<String> = v["degrees"].as_array().unwrap().iter().map(|d| d.to_string()).collect();
                assert_eq!(line("degrees: "), degrees.join(", "), "{name}");
            }
            "kernel-check" => {
                let yes = v["holds"].as_bool().unwrap();
                assert_eq!(line("kernel principal up to degree 4: "), if yes { "yes" } else { "no" }, "{name}");
            }
            "member" => {
                let yes = v["member"].as_bool().unwrap();
                assert_eq!(line("member up to degree 4: "), if yes { "yes" } else { "no" }, "{name}");
            }
            "dependence" => {
                assert_eq!(text.contains("no relation"), v["independent"].as_bool().unwrap(), "{name}");
            }
            "normalize" => {
                let shown: Vec<&str> = v["normalized"].as_array().unwrap().iter().map(|p| p.as_str().unwrap()).collect();
                assert_eq!(line("normalized: "), shown.join("; "), "{name}");
            }
            other => panic!("unexpected command {other}"),
        }
    }
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let bad: &[&[&str]] = &[
        &["verify-retraction", "--images", "x^; y"],
        &["verify-retraction", "--images", "x*y; 2x"],
        &["verify-retraction", "--field", "F4", "--images", "x; y"],
        &["verify-retraction", "--vars", "x,y", "--images", "x; y; z"],
        &["verify-retraction", "--vars", "x,x", "--images", "x; x"],
        &["classify", "--vars", "a,b,c,d", "--images", "a; b; c; d"],
        &["classify", "--images", "x; y", "--bound", "-1"],
        &["enum-monomial", "--n", "4", "--max-exp", "1"],
        &["enum-monomial", "--n", "2", "--max-exp", "1", "--match-corpus", "/nonexistent/corpus.txt"],
        &["expmap", "verify", "--images", "x + V"],
        &["expmap", "ml", "--bound", "2"],
        &["grading", "--weights", "1,a", "--gens", "x"],
        &["grading", "--weights", "1,2", "--vars", "x,y,z", "--gens", "x"],
        &["member", "--gens", "x; y", "--f", "x +", "--bound", "2"],
        &["member", "--gens", "x; y", "--f", "x", "--bound", "0"],
        &["kernel-check", "--images", "x; y; z", "--h", "(x"],
        &["no-such-command"],
        &[],
    ];
    for args in bad {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty(), "{args:?} wrote a report");
        assert!(!o.stderr.is_empty(), "{args:?} gave no message");
    }
}

#[test]
fn check_failures_exit_1() {
    let failing: &[&[&str]] = &[
        &["grading", "--weights", "1,2", "--gens", "x + y"],
        &["expmap", "constants", "--images", "x; y + x*U; z + y*U"],
        &["expmap", "slice", "--images", "x + U^2; y"],
        &["expmap", "ml", "--images", "x; y + U", "--images", "x + U*U; y"],
        &["normalize", "--images", "x + y; y; z"],
    ];
    for args in failing {
        let o = run(args);
        assert_eq!(code(&o), 1, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn degree_cap_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_retractlab"))
        .args(["member", "--gens", "x; y^2", "--f", "x^3", "--bound", "8"])
        .env("RETRACTLAB_MAX_DEGREE", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("safety cap 5"));

    let o = Command::new(env!("CARGO_BIN_EXE_retractlab"))
        .args(["verify-retraction", "--images", "x^6; y"])
        .env("RETRACTLAB_MAX_DEGREE", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);

    let o = Command::new(env!("CARGO_BIN_EXE_retractlab"))
        .args(["verify-retraction", "--images", "x; y"])
        .env("RETRACTLAB_MAX_DEGREE", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);

    // A generous cap leaves results unchanged.
    let o = Command::new(env!("CARGO_BIN_EXE_retractlab"))
        .args(["verify-retraction", "--images", "x^6; y"])
        .env("RETRACTLAB_MAX_DEGREE", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
}

#[test]
fn threads_flag_does_not_change_the_enumeration() {
    let one = stdout(&run(&["enum-monomial", "--n", "3", "--max-exp", "2", "--threads", "1"]));
    let many = stdout(&run(&["enum-monomial", "--n", "3", "--max-exp", "2", "--threads", "4"]));
    assert_eq!(one, many);
    assert_eq!(code(&run(&["enum-monomial", "--n", "2", "--max-exp", "1", "--threads", "0"])), 0);
}

/// Random monic-monomial tuples in two variables: the binary agrees with
/// the exponent-matrix test and its two reporters agree with each other.
#[test]
fn verify_retraction_matches_matrix_test() {
    let entry = prop_oneof![
        1 => Just(None),
        4 => (0u32..=2, 0u32..=2).prop_map(|(a, b)| Some(ExponentVector::new(vec![a, b]))),
    ];
    let strategy = proptest::collection::vec(entry, 2);
    let config = Config { cases: 40, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(config.rng_algorithm));
    runner
        .run(&strategy, |images| {
            let tuple = MonomialTuple::new(images);
            let text = tuple.to_string();
            let o = run(&["verify-retraction", "--vars", "x,y", "--images", &text]);
            let expected = tuple.is_retraction_by_matrix();
            prop_assert_eq!(code(&o), if expected { 0 } else { 1 });
            let (v, c) = json_of(&["verify-retraction", "--vars", "x,y", "--images", &text]);
            prop_assert_eq!(c, code(&o));
            prop_assert_eq!(v["retraction"].as_bool(), Some(expected));
            Ok(())
        })
        .unwrap();
}
