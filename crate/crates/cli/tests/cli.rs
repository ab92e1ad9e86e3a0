use std::process::{Command, Output};

fn krasner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krasner"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_fixture(name: &str, edit: impl FnOnce(&mut serde_json::Value)) -> std::path::PathBuf {
    let mut doc: serde_json::Value =
        serde_json::from_str(include_str!("../fixtures/example_3_2.json")).unwrap();
    edit(&mut doc);
    let path = std::env::temp_dir().join(format!("krasner-{}-{name}.json", std::process::id()));
    std::fs::write(&path, doc.to_string()).unwrap();
    path
}

#[test]
fn verify_and_classify_bundled_fixtures() {
    for name in [
        "example_3_2",
        "krasner_k2",
        "sign_hyperfield",
        "z4_classical",
    ] {
        assert_eq!(krasner(&["verify", name]).status.code(), Some(0), "{name}");
    }
    let out = krasner(&["classify", "example_3_2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("hyperfield: hyperfield flag as recorded (false)"));
    assert!(stdout(&out).contains("hyperdomain: hyperdomain flag as recorded (false)"));
    assert!(stdout(&krasner(&["classify", "sign_hyperfield"]))
        .contains("hyperfield flag as recorded (true)"));
}

#[test]
fn broken_fixtures_exit_with_two() {
    let ragged = temp_fixture("ragged", |d| {
        d["add"][1].as_array_mut().unwrap().truncate(2)
    });
    let out = krasner(&["verify", ragged.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("add table"));

    let unknown = temp_fixture("unknown", |d| d["mul"][2][2] = "z".into());
    assert_eq!(
        krasner(&["verify", unknown.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        krasner(&["verify", "no_such_fixture"]).status.code(),
        Some(2)
    );
    let _ = std::fs::remove_file(ragged);
    let _ = std::fs::remove_file(unknown);
}

#[test]
fn failing_axioms_exit_with_one() {
    // a + a no longer contains 0, so inverses break
    let broken = temp_fixture("axioms", |d| d["add"][1][1] = serde_json::json!(["b"]));
    let out = krasner(&["verify", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL]"));
    let _ = std::fs::remove_file(broken);
}

#[test]
fn closure_reports_the_worked_example() {
    let out = krasner(&["closure", "example_3_2", "--ideal", "0,b"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("{0,b} = {0,b}; integrally closed"));
    assert!(stdout(&out).contains("witness/b"));

    let out = krasner(&["closure", "example_3_2", "--ideal", "0"]);
    assert!(stdout(&out).contains("{0} = {0}; integrally closed"));

    let out = krasner(&["closure", "z4_classical", "--ideal", "0"]);
    assert!(stdout(&out).contains("{0} = {0,2}; not integrally closed"));
}

#[test]
fn closure_rejects_a_non_ideal_with_its_witness() {
    let out = krasner(&["closure", "example_3_2", "--ideal", "0,b,c"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("not a hyperideal") && err.contains("{a}"),
        "{err}"
    );
}

#[test]
fn value_backend_closure_agrees_with_valuations() {
    let out = krasner(&["closure", "--value-rank", "2", "--ideal", "cut:j=2,p=0,5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Ī = I; agrees with valuation intersection"));
}

#[test]
fn ideals_lists_the_four_and_flags_the_divergence() {
    let out = krasner(&["ideals", "example_3_2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for set in ["{0}:", "{0,b}:", "{0,c}:", "{0,a,b,c}:"] {
        assert!(text.contains(set), "{set} missing from\n{text}");
    }
    assert!(text.contains("[PASS] example_3_2/divergent/{0,b,c}"));
}

#[test]
fn radical_and_quotient() {
    assert!(stdout(&krasner(&["radical", "z4_classical", "--ideal", "0"])).contains("({0,2})"));
    let out = krasner(&["quotient", "z4_classical", "--ideal", "0,2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("coset/3: projection ({1,3})"));
}

#[test]
fn scoped_suite_runs() {
    let out = krasner(&["suite", "--only", "remark", "--fixture", "example_3_2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(" 0 failed"));
    assert_eq!(
        krasner(&["suite", "--only", "nonsense"]).status.code(),
        Some(2)
    );
}

#[test]
fn json_reports_are_deterministic() {
    let args = [
        "--format", "json", "suite", "--only", "oracle", "--random", "4", "--seed", "7",
    ];
    let (a, b) = (krasner(&args), krasner(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let parsed: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(parsed["entries"].as_array().is_some_and(|e| !e.is_empty()));
}
