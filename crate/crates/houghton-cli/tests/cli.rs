use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn houghton(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_houghton")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("structured output")
}

#[test]
fn apply_to_the_two_quadrant_example() {
    let o = houghton(&["apply", &fixture("skew2.json"), "((6,5),1)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "((8,6),1)");
    let o = houghton(&["apply", &fixture("skew2.json"), "[3, 5, 2]", "--format", "json"]);
    assert_eq!(json(&o)["image"], serde_json::json!([6, 8, 1]));
}

#[test]
fn validate_reports_the_class() {
    let o = houghton(&["validate", &fixture("skew2.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("G̃₂ bijective, φ=(1,-1)"), "{}", stdout(&o));

    let o = houghton(&["validate", &fixture("identity.json"), "--format", "json"]);
    let v = json(&o);
    for flag in ["is_bijective", "in_gtilde", "in_gn", "in_m", "in_t"] {
        assert_eq!(v["class"][flag], true, "{flag}");
    }

    let o = houghton(&["validate", &fixture("houghton3.json")]);
    assert_eq!(o.status.code(), Some(2), "a Houghton permutation is not an element file");
}

#[test]
fn invalid_elements_exit_with_one() {
    let o = houghton(&["validate", &fixture("colliding.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not injective"));
    assert!(stderr(&o).contains("((1,1),1)") && stderr(&o).contains("((2,1),1)"));

    let o = houghton(&["invert", &fixture("t1.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not bijective"));

    let o = houghton(&["grade", &fixture("skew2.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not in M"));
}

#[test]
fn parse_and_usage_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("houghton-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ \"n\": 2, ").unwrap();
    assert_eq!(houghton(&["validate", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(houghton(&["validate", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(houghton(&["apply", &fixture("skew2.json"), "((0,1),1)"]).status.code(), Some(2));
    assert_eq!(houghton(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(houghton(&["homology", "sigma-nk", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn compose_and_invert_round_trip() {
    let o = houghton(&["compose", &fixture("t1.json"), &fixture("t2.json")]);
    assert!(o.status.success());
    assert_eq!(json(&o)["m"], serde_json::json!([[1, 1], [1, 1]]));

    let dir = std::env::temp_dir().join(format!("houghton-cli-inv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let inv = dir.join("inv.json");
    let o = houghton(&["invert", &fixture("skew2.json"), "--out", inv.to_str().unwrap()]);
    assert!(o.status.success());
    let o = houghton(&["compose", &fixture("skew2.json"), inv.to_str().unwrap()]);
    let ident = houghton(&["compose", &fixture("identity.json"), &fixture("identity.json")]);
    assert_eq!(stdout(&o), stdout(&ident));
}

#[test]
fn grade_and_decomposition() {
    let o = houghton(&["grade", &fixture("t1sq_t2.json"), "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["grade"], 3);
    assert_eq!(v["vrays"], 3);
    assert_eq!(v["hrays"], 3);

    let o = houghton(&["grade", &fixture("identity.json")]);
    assert!(stdout(&o).starts_with("grade 0"));
    let o = houghton(&["decompose", &fixture("identity.json"), "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["vrays"], serde_json::json!([]));
    assert_eq!(v["hrays"], serde_json::json!([]));
}

#[test]
fn order_queries() {
    let o = houghton(&["leq", &fixture("t2.json"), &fixture("t1sq_t2.json")]);
    assert_eq!(stdout(&o).trim(), "yes: t = t1^2");
    let o = houghton(&["leq", &fixture("t1sq_t2.json"), &fixture("t2.json")]);
    assert_eq!(stdout(&o).trim(), "no");

    let o = houghton(&["predecessor", &fixture("t1sq_t2.json"), "--quadrant", "2", "--format", "json"]);
    assert!(o.status.success());
    let o = houghton(&["predecessor", &fixture("identity.json")]);
    assert_eq!(o.status.code(), Some(1));

    let o = houghton(&["orbit", &fixture("t2.json"), &fixture("t1sq_t2.json"), "--format", "json"]);
    assert_eq!(json(&o)["grade0"], 1);
    let o = houghton(&["orbit", &fixture("t1.json"), "--against", &fixture("t2.json")]);
    assert!(o.status.success(), "t1 and t2 lie in one orbit");
    let o = houghton(&["orbit", &fixture("t1.json"), "--against", &fixture("t1sq_t2.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn homology_reports() {
    let o = houghton(&["homology", "sigma-nk", "--n", "2", "--k", "4", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["homology"]["betti"], serde_json::json!([0, 5]));
    assert_eq!(v["euler_characteristic"], -4);
    assert!(stderr(&o).contains("wall time"));

    let o = houghton(&["homology", "sigma-nk", "--n", "1", "--k", "3", "--format", "json"]);
    assert_eq!(json(&o)["homology"]["betti"], serde_json::json!([2]));

    let o = houghton(&["homology", "sigma-alpha-model", "--n", "2", "--k", "4", "--format", "json"]);
    assert_eq!(json(&o)["homology"]["betti"], serde_json::json!([0, 5]));

    let table = stdout(&houghton(&["homology", "sigma-nk", "--n", "2", "--k", "4"]));
    assert!(table.contains("euler characteristic -4"));
}

#[test]
fn homology_of_files() {
    let dir = std::env::temp_dir().join(format!("houghton-cli-files-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    };
    let simplex = write("simplex.json", r#"{"vertices": ["a", "b", "c", "d"], "facets": [[0, 1, 2, 3]]}"#);
    let o = houghton(&["homology", "file", &simplex, "--format", "json"]);
    assert_eq!(json(&o)["homology"]["betti"], serde_json::json!([0, 0, 0, 0]));

    let graph =
        write("k22.json", r#"{"n_colors": 2, "colors": [1, 1, 2, 2], "edges": [[0, 2], [0, 3], [1, 2], [1, 3]]}"#);
    let o = houghton(&["homology", "clique", &graph, "--format", "json"]);
    assert_eq!(json(&o)["homology"]["betti"], serde_json::json!([0, 1]));

    let poset =
        write("poset.json", r#"{"labels": ["a", "b", "c", "d"], "relations": [[0, 2], [0, 3], [1, 2], [1, 3]]}"#);
    let o = houghton(&["homology", "order-complex", &poset, "--format", "json"]);
    assert_eq!(json(&o)["homology"]["betti"], serde_json::json!([0, 1]));
    // Two maximal elements with two minimal common lower bounds: no meet.
    assert_eq!(houghton(&["homology", "nerve", &poset]).status.code(), Some(1));

    let vee = write("vee.json", r#"{"labels": ["x", "y", "z"], "relations": [[0, 1], [0, 2]]}"#);
    let o = houghton(&["homology", "nerve", &vee, "--format", "json"]);
    assert_eq!(json(&o)["matches_union"], true);

    let cover = write(
        "cover.json",
        r#"{"target": {"vertices": ["a", "b", "c"], "facets": [[0, 1], [1, 2], [0, 2]]},
            "cover": [{"vertices": ["a", "b", "c"], "facets": [[0, 1]]},
                      {"vertices": ["a", "b", "c"], "facets": [[1, 2]]},
                      {"vertices": ["a", "b", "c"], "facets": [[0, 2]]}]}"#,
    );
    let o = houghton(&["homology", "nerve", &cover]);
    assert!(stdout(&o).contains("nerve and union agree"));

    let o = houghton(&["complex", "sigma-nk", "--n", "2", "--k", "2"]);
    assert_eq!(json(&o)["facets"], serde_json::json!([[0, 3], [1, 2]]));
}

#[test]
fn verification_suites() {
    let o = houghton(&["verify", "grade-step", "--trials", "200", "--seed", "7"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));

    let o = houghton(&["verify", "wedge", "--trials", "20", "--seed", "1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.trim_start().starts_with("trial ")).count(), 20);
    assert!(text.contains("b̃ = "));

    let o = houghton(&["verify", "no-such"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown suite"));

    for suite in ["predecessor", "grade-agreement", "orbit", "glb", "exact-sequence", "nerve-fidelity", "stabilizer"] {
        let o = houghton(&["verify", suite, "--trials", "30", "--seed", "3", "--format", "json"]);
        assert!(o.status.success(), "{suite}");
        let v = json(&o);
        assert_eq!(v["failures"], serde_json::json!([]));
        assert_eq!(v["trials"], 30);
    }
}

#[test]
fn reports_are_reproducible() {
    let run = || stdout(&houghton(&["verify", "glb", "--trials", "10", "--seed", "42", "--format", "json"]));
    assert_eq!(run(), run());
    let other = stdout(&houghton(&["verify", "glb", "--trials", "10", "--seed", "43", "--format", "json"]));
    assert_ne!(run(), other);
}
