use std::process::{Command, Output};
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::Value;

use hoplift_core::cyclo::{CyclotomicField, FieldExt};
use hoplift_core::datum::fixtures;
use hoplift::report::Report;

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}.datum", env!("CARGO_MANIFEST_DIR"))
}

fn hoplift(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hoplift")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = hoplift(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("hoplift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn verma_all_on_smallest_example() {
    let v = json(&["verma", &fixture("e1"), "--all"]);
    let rows = v["verma"].as_array().unwrap();
    let mut dims: Vec<u64> = rows.iter().map(|r| r["dim_L"].as_u64().unwrap()).collect();
    dims.sort();
    assert_eq!(dims, [1, 1, 2, 2]);
    for r in rows {
        for key in ["gamma", "S", "e", "dim_Z", "dim_L", "loewy_length", "layers", "assertions"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
        assert_eq!(r["dim_Z"], 2);
    }
    let gammas: Vec<&Value> = rows.iter().map(|r| &r["gamma"]).collect();
    let mut sorted = gammas.clone();
    sorted.sort_by_key(|g| g.to_string());
    assert_eq!(gammas, sorted);
}

#[test]
fn double_trivial_character_of_cyclic_example() {
    let v = json(&["double", &fixture("e2"), "--lambda", "0,0"]);
    let row = &v["double"][0];
    assert_eq!(row["dim_I"], 9);
    assert_eq!(row["dim_L"], 1);
    assert_eq!(row["loewy_length"], 3);
    assert_eq!(row["composition_length"], 4);
    assert!(row["assertions"].as_array().unwrap().iter().all(|a| a["status"] == "pass"));
}

#[test]
fn validate_reports_not_half_clean() {
    let out = hoplift(&["validate", &fixture("e3")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("half_clean=false"));
    assert!(text.contains("not asserted"));
    let v = json(&["validate", &fixture("e3")]);
    assert_eq!(v["validation"]["half_clean"], false);
    let statuses: Vec<&str> = v["assertions"].as_array().unwrap().iter().map(|a| a["status"].as_str().unwrap()).collect();
    assert_eq!(statuses, ["pass", "not asserted", "not asserted"]);
}

#[test]
fn double_on_non_half_clean_marks_theorem_checks() {
    let v = json(&["double", &fixture("e3"), "--all"]);
    let rows = v["double"].as_array().unwrap();
    assert_eq!(rows.len(), 16);
    for r in rows {
        for a in r["assertions"].as_array().unwrap() {
            let oracle = a["check"].as_str().unwrap().starts_with("oracle_");
            assert_eq!(a["status"], if oracle { "pass" } else { "not asserted" });
        }
    }
}

#[test]
fn input_errors_exit_with_two() {
    let bad = scratch("bad.datum", "[group]\norders = 2\n\n[datum]\nn = one\n");
    let out = hoplift(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"), "{}", String::from_utf8_lossy(&out.stderr));

    let out = hoplift(&["lattice", &fixture("e3"), "--lambda", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not classical"));

    let out = hoplift(&["verma", &fixture("e1"), "--gamma", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = hoplift(&["verma", &fixture("missing")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_datum_lists_failed_checks() {
    // q = 1 on the single generator: χ(a) is trivial
    let text = "[group]\norders = 2\n\n[datum]\nn = 1\na.1 = 0\nb.1 = 1\nchi.1 = 1\n";
    let out = hoplift(&["validate", &scratch("trivial.datum", text)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("validation failed"), "{err}");
    let out = hoplift(&["verma", &scratch("trivial2.datum", text), "--all"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lattice_reports_locals() {
    let v = json(&["lattice", &fixture("e1"), "--lambda", "0,0,0,0"]);
    let row = &v["lattice"][0];
    let locals = row["locals"].as_array().unwrap();
    assert!(!locals.is_empty());
    let ell = v["lattice"][0]["composition_length"].as_u64().unwrap();
    assert!(ell.is_power_of_two());
}

#[test]
fn json_round_trips_and_field_values_are_exact() {
    let out = hoplift(&["double", &fixture("e2"), "--all", "--format", "json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.to_json(), text);
    let v: Value = serde_json::from_str(&text).unwrap();

    let d = fixtures::e2();
    let n = v["datum"]["q"][0]["N"].as_u64().unwrap() as u32;
    let field = CyclotomicField::new(n).unwrap();
    for (i, q) in v["datum"]["q"].as_array().unwrap().iter().enumerate() {
        let coeffs = q["coeffs"].as_array().unwrap().iter().map(|c| BigRational::from_str(c.as_str().unwrap()).unwrap()).collect();
        let (a, chi) = d.generator(i);
        assert_eq!(field.from_coeffs(coeffs), d.eval(chi, a));
    }
}

#[test]
fn output_is_identical_across_thread_counts() {
    for args in [["double", "e1"], ["verma", "e4"]] {
        let f = fixture(args[1]);
        let one = hoplift(&[args[0], &f, "--all", "--format", "json", "--threads", "1"]);
        let four = hoplift(&[args[0], &f, "--all", "--format", "json", "--threads", "4"]);
        assert_eq!(one.status.code(), Some(0));
        assert_eq!(one.stdout, four.stdout);
    }
}

#[test]
fn out_flag_writes_the_report() {
    let path = scratch("report.json", "");
    let out = hoplift(&["verma", &fixture("e2"), "--gamma", "0", "--format", "json", "--out", &path]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verma"].as_array().unwrap().len(), 1);
}
