//! Command output on the checked-in fixtures, compared with golden files.
//! Run with UPDATE_GOLDEN=1 to rewrite them.

use std::path::PathBuf;
use std::process::Command;

const CASES: &[(&str, &[&str])] = &[
    ("classify_hom_incl_C2", &["classify-hom", "incl_C2.json", "--json"]),
    ("classify_hom_qA", &["classify-hom", "qA.json"]),
    ("classify_biact_C2_two_points", &["classify-biact", "C2_two_points.json"]),
    ("closure_B2_right", &["closure", "--side", "right", "--seed", "0", "B2.json"]),
    ("closure_CH3_left", &["closure", "--side", "left", "--seed", "e", "CH3.json"]),
    ("factorize_three_qA", &["factorize", "--system", "three", "qA.json"]),
    ("factorize_si_psiB", &["factorize", "--system", "si", "psiB.json"]),
    ("factorize_hl_iotaB", &["factorize", "--system", "hl", "iotaB.json"]),
    ("factorize_tc_etale_incl_C2", &["factorize", "--system", "tc-etale", "incl_C2.json"]),
    ("factorize_pure_cs_C2_two_points", &["factorize", "--system", "pure-cs", "C2_two_points.json"]),
    ("tensor_B2_unitB", &["tensor", "B2_regular.json", "unitB.json"]),
    ("compose_psiB_unitB", &["compose", "psiB.json", "unitB.json"]),
    ("galois_C2xC2", &["galois", "C2xC2.json"]),
    ("galois_B2", &["galois", "B2.json", "--json"]),
    ("slice_B2_regular", &["slice", "--action", "B2_regular.json"]),
    ("present_A2", &["present", "--file", "A2_presented.json"]),
    ("present_bicyclic", &["present", "--file", "bicyclic.json"]),
    ("validate_T2", &["validate", "T2.json"]),
    ("validate_missing", &["validate", "missing.json"]),
];

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_monoid-geom"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (name, args) in CASES {
        let (code, stdout, stderr) = run(args);
        let actual = format!("$ monoid-geom {}\nexit: {code}\n--- stdout\n{stdout}--- stderr\n{stderr}", args.join(" "));
        let path = dir.join(format!("{name}.txt"));
        if update {
            std::fs::write(&path, &actual).unwrap();
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(actual, expected, "{name}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["classify-hom", "incl_C2.json"]).0, 0);
    assert_eq!(run(&["classify-hom", "B2.json"]).0, 2);
    assert_eq!(run(&["present", "--file", "bicyclic.json"]).0, 3);
    let (_, _, stderr) = run(&["present", "--file", "bicyclic.json"]);
    assert!(stderr.starts_with("error[cap_exceeded]"), "{stderr}");
}

#[test]
fn documented_examples() {
    let (_, out, _) = run(&["classify-hom", "incl_C2.json", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["properties"]["etale"]["value"], true);
    assert_eq!(run(&["closure", "--side", "right", "--seed", "0", "B2.json"]).1, "{1, 0}\n");
    let (_, out, _) = run(&["factorize", "--system", "three", "qA.json", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let pi = v["pi"]["map"].as_object().unwrap();
    assert_eq!(pi["a"], pi["z"]);
    let iota = v["iota"]["map"].as_object().unwrap();
    assert!(iota.iter().all(|(k, x)| x == k));
}
