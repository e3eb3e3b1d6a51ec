use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn qtoric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtoric"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = qtoric(args);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().expect("exit code"), v)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qtoric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cube_validates() {
    let (code, v) = run_json(&["validate", s(&data("cube_isotropy.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["data"]["valid"], true);
}

#[test]
fn cube_boundary_is_balanced() {
    let (code, v) = run_json(&["boundary", s(&data("cube_isotropy.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["plus"], 4);
    assert_eq!(v["data"]["minus"], 4);
    assert_eq!(v["data"]["boundary_class"], Value::Array(vec![]));
    let text = String::from_utf8(
        qtoric(&[
            "--format",
            "text",
            "boundary",
            s(&data("cube_isotropy.json")),
        ])
        .stdout,
    )
    .unwrap();
    assert!(text.contains("4 x sign(+1), 4 x sign(-1)"), "{text}");
}

#[test]
fn euler_matches_half_boundary() {
    for f in ["cube_isotropy.json", "pyramid_isotropy.json"] {
        let (code, v) = run_json(&["euler", s(&data(f))]);
        assert_eq!(code, 0, "{f}");
        assert_eq!(v["data"]["chi"], v["data"]["half_boundary"], "{f}");
    }
}

#[test]
fn malformed_input_is_a_parse_error() {
    let bad = temp_file("bad.json", "{\"kind\": \"polygon4\"");
    let (code, v) = run_json(&["validate", s(&bad)]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "parse_error");
    let missing = temp_file("missing.json", "{\"kind\": \"isotropy\"}");
    assert_eq!(run_json(&["validate", s(&missing)]).0, 1);
}

#[test]
fn wrong_kind_is_a_parse_error() {
    let (code, _) = run_json(&["cobordism", s(&data("cube_isotropy.json"))]);
    assert_eq!(code, 1);
}

#[test]
fn invalid_polygon_exits_2() {
    let p = temp_file(
        "bad_polygon.json",
        r#"{"kind": "polygon4", "vecs": [[1,0],[1,2],[0,1]]}"#,
    );
    let (code, v) = run_json(&["validate", s(&p)]);
    assert_eq!(code, 2);
    assert_eq!(v["data"]["valid"], false);
}

#[test]
fn tetrahedron_search_reports_mod2_certificate() {
    let (code, v) = run_json(&["search", s(&data("tetrahedron.json"))]);
    assert_eq!(code, 2);
    assert_eq!(v["data"]["certificate"], "mod2");
    assert!(!v["notes"].as_array().unwrap().is_empty());
}

#[test]
fn hirzebruch_class_is_zero() {
    let (code, v) = run_json(&["cobordism", s(&data("hirzebruch_3.json"))]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["class"], Value::Array(vec![]));
    assert_eq!(v["data"]["augmentation"], 0);
    let text = String::from_utf8(
        qtoric(&[
            "--format",
            "text",
            "cobordism",
            s(&data("hirzebruch_3.json")),
        ])
        .stdout,
    )
    .unwrap();
    assert!(text.contains("class: 0"), "{text}");
}

#[test]
fn two_summand_square_has_two_terms() {
    let (code, v) = run_json(&["cobordism", s(&data("two_summand.json"))]);
    assert_eq!(code, 0);
    let terms = v["data"]["class"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert!(terms.iter().all(|t| t["coefficient"] == 1));
    assert_eq!(v["data"]["augmentation"], 2);
}

#[test]
fn witnesses_verify() {
    for f in ["hirzebruch_3.json", "two_summand.json"] {
        let (code, v) = run_json(&["witness", s(&data(f))]);
        assert_eq!(code, 0, "{f}");
        assert_eq!(v["data"]["verification"]["passed"], true, "{f}");
        // The emitted witness is itself a valid document.
        let w = temp_file(&format!("witness-{f}"), &v["data"]["witness"].to_string());
        assert_eq!(run_json(&["validate", s(&w)]).0, 0, "{f}");
    }
}

#[test]
fn square_outside_patterns_exits_4() {
    let (code, v) = run_json(&["witness", s(&data("square_no_pattern.json"))]);
    assert_eq!(code, 4);
    assert_eq!(v["status"], "pattern_not_matched");
}

#[test]
fn dead_end_polygon_exits_3() {
    let (code, v) = run_json(&["cobordism", s(&data("dead_end.json"))]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "unclassifiable");
}

#[test]
fn equality_modes() {
    let hex = data("hexagon.json");
    let (_, v) = run_json(&["equal", s(&hex), s(&hex)]);
    assert_eq!(v["data"]["equal"], true);
    let (_, v) = run_json(&[
        "equal",
        s(&data("hirzebruch_3.json")),
        s(&data("two_summand.json")),
    ]);
    assert_eq!(v["data"]["equal"], false);
    assert_eq!(v["data"]["delta"], Value::Null);
}

#[test]
fn normalize_is_byte_stable() {
    for f in [
        "cube_isotropy.json",
        "pyramid_isotropy.json",
        "tetrahedron.json",
        "hexagon.json",
        "two_summand.json",
    ] {
        let on_disk = std::fs::read(data(f)).unwrap();
        let once = qtoric(&["normalize", s(&data(f))]);
        assert_eq!(once.status.code(), Some(0), "{f}");
        assert_eq!(once.stdout, on_disk, "{f}");
    }
}

#[test]
fn catalog_output_round_trips() {
    let out = qtoric(&["catalog", "dodecahedron"]).stdout;
    let path = temp_file("dodecahedron.json", std::str::from_utf8(&out).unwrap());
    assert_eq!(qtoric(&["normalize", s(&path)]).stdout, out);
    let (code, v) = run_json(&["validate", s(&path)]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["h_vector"], serde_json::json!([1, 9, 9, 1]));
}

#[test]
fn seeded_output_is_deterministic() {
    let cube = data("cube_isotropy.json");
    for seed in ["0", "7", "12345"] {
        let a = qtoric(&["--seed", seed, "homology", s(&cube)]);
        let b = qtoric(&["--seed", seed, "homology", s(&cube)]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "seed {seed}");
    }
    // The ranks themselves do not depend on the seed.
    let ranks =
        |seed: &str| run_json(&["--seed", seed, "homology", s(&cube)]).1["data"]["ranks"].clone();
    assert_eq!(ranks("0"), ranks("99"));
}

#[test]
fn large_integers_are_strings() {
    let big = "123456789012345678901234567890";
    let p = temp_file(
        "big.json",
        &format!(r#"{{"kind": "polygon4", "vecs": [[1,0],[0,1],[1,"{big}"]]}}"#),
    );
    let out = qtoric(&["normalize", s(&p)]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["vecs"][2][1], big);
}
