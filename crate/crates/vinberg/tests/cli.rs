use std::process::{Command, Output};

use serde_json::Value;

fn vinberg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vinberg"))
        .args(args)
        .env_remove("CLUSTER_MAX_SEEDS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn seed_build_framed_sl2() {
    let out = vinberg(&["seed", "build", "--type", "A1", "--framed"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let verts = v["vertices"].as_array().unwrap();
    assert_eq!(verts.len(), 4);
    assert_eq!(verts.iter().filter(|x| x["frozen"] == false).count(), 1);
    assert_eq!(v["sigma"], serde_json::json!(["A2", "A3"]));
}

#[test]
fn seed_build_sl3_dot() {
    let out = vinberg(&["seed", "build", "--type", "A2", "--framed", "--out", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph seed {"));
    assert_eq!(dot.matches("shape=circle").count(), 4);
    assert_eq!(dot.matches("shape=box").count(), 6);
}

#[test]
fn seed_build_from_cartan_file_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    std::fs::write(&c, r#"{"labels": ["a"], "matrix": [[2]]}"#).unwrap();
    let seed = dir.path().join("seed.json");
    let out = vinberg(&[
        "seed", "build", "--cartan", c.to_str().unwrap(), "--word", "[1,-1]", "-o", seed.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&seed).unwrap()).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);

    let out = vinberg(&["seed", "mutate", "--seed-file", seed.to_str().unwrap(), "--at", "A0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let m = json_of(&out);
    assert_eq!(m["path"], serde_json::json!(["A0"]));
}

#[test]
fn mutate_twice_returns_initial_cluster() {
    let out = vinberg(&["seed", "mutate", "--type", "A2", "--framed", "--at", "A3", "A3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let names: Vec<&str> = v["vertices"].as_array().unwrap().iter().map(|x| x["name"].as_str().unwrap()).collect();
    let vars: Vec<&str> = v["variables"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(names, vars);
}

#[test]
fn invalid_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("bad.json");
    std::fs::write(&c, r#"{"matrix": [[2, 1], [-1, 2]]}"#).unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["seed", "build", "--cartan", c.to_str().unwrap(), "--word", "[1]"],
        vec!["seed", "build", "--type", "A2", "--word", "[1,1]"],
        vec!["seed", "build", "--type", "Q7"],
        vec!["seed", "build"],
        vec!["seed", "mutate", "--type", "A1", "--framed", "--at", "A0"],
        vec!["verify", "unknown-suite"],
        vec!["membership", "--expr", "A1 / (A1 + A2)"],
        vec!["membership", "--expr", "A9"],
        vec!["frobnicate"],
    ];
    for args in cases {
        assert_eq!(vinberg(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_exit_codes_and_echo() {
    let out = vinberg(&["verify", "sl2", "--samples", "100", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["rng_seed"], 42);
    assert_eq!(v["samples"], 100);
    assert_eq!(v["passed"], true);

    let out = vinberg(&["verify", "gl2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["checks"][0]["id"], "identity_k3");

    // a depth cap too small for SL3 fails the Laurent check
    let out = Command::new(env!("CARGO_BIN_EXE_vinberg"))
        .args(["verify", "sl3", "--samples", "2"])
        .env("CLUSTER_MAX_SEEDS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["depth"], 3);
    assert_eq!(v["passed"], false);
}

#[test]
fn reports_are_reproducible() {
    let a = vinberg(&["verify", "valuations", "--seed", "7"]);
    let b = vinberg(&["verify", "valuations", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["checks"][0]["detail"]["table"].as_array().unwrap().len(), 250);
    let c = vinberg(&["verify", "valuations", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn membership_verdicts() {
    let verdict = |expr: &str, sigma: &str| {
        let out = vinberg(&["membership", "--expr", expr, "--sigma", sigma]);
        assert_eq!(out.status.code(), Some(0));
        json_of(&out)["verdict"].as_str().unwrap().to_string()
    };
    assert_eq!(verdict("A0^-1", "all"), "InUpperOnly");
    assert_eq!(verdict("A0^-1", "default"), "InUpperBar");
    assert_eq!(verdict("A1'", "all"), "InUpperBar");
    assert_eq!(verdict("1/A1", "all"), "NotLaurent");
    assert_eq!(verdict("A1*A1' - A2*A3", "A0,A2,A3"), "InUpperBar");
}

#[test]
fn membership_reads_expression_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("e.txt");
    std::fs::write(&f, "A2^-1 * A0\n").unwrap();
    let out = vinberg(&["membership", "--expr-file", f.to_str().unwrap(), "--sigma", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "InUpperOnly");
    assert_eq!(v["witnesses"][0]["exponent"], -1);
}

#[test]
fn monoid_commands() {
    let out = vinberg(&["monoid", "sl2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["relations"][0], "1/1*A1*A1' + -1/1*A2*A3 + -1/1*A0");
    assert_eq!(v["verified"], true);

    let out = vinberg(&["monoid", "gl2", "--k", "2"]);
    assert_eq!(json_of(&out)["cartan"]["matrix"], serde_json::json!([[2, -5], [-5, 2]]));

    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("a2.json");
    let s = dir.path().join("f.json");
    std::fs::write(&c, r#"{"matrix": [[2, -1], [-1, 2]]}"#).unwrap();
    std::fs::write(&s, r#"{"matrix": [[1], [1]]}"#).unwrap();
    let out = vinberg(&["monoid", "dotted", "--cartan", c.to_str().unwrap(), "--spec", s.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json_of(&out)["matrix"],
        serde_json::json!([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    );
}

#[test]
fn point_matches_golden_files() {
    for (ty, file) in [("A1", "point_a1_seed42.json"), ("A2", "point_a2_seed42.json")] {
        let out = vinberg(&["point", "--type", ty, "--seed", "42"]);
        assert_eq!(out.status.code(), Some(0));
        let golden = std::fs::read(format!("{}/tests/golden/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert_eq!(out.stdout, golden, "{ty}");
        assert_eq!(json_of(&out)["valid"], true);
    }
}

#[test]
fn sl2_point_values_follow_the_pinning() {
    let v = json_of(&vinberg(&["point", "--seed", "42"]));
    let r = |s: &Value| s.as_str().unwrap().to_string();
    let m = &v["point"]["matrix"];
    let t = r(&v["point"]["torus"][0]);
    let q = |s: String| -> (i64, i64) {
        let mut it = s.split('/');
        let n = it.next().unwrap().parse().unwrap();
        let d = it.next().map_or(1, |x| x.parse().unwrap());
        (n, d)
    };
    let mul = |a: (i64, i64), b: (i64, i64)| (a.0 * b.0, a.1 * b.1);
    let eq = |a: (i64, i64), b: (i64, i64)| a.0 * b.1 == b.0 * a.1;
    let (g11, g12, g21) = (q(r(&m[0][0])), q(r(&m[0][1])), q(r(&m[1][0])));
    let tt = q(t);
    let vals = &v["framed_values"];
    assert!(eq(q(r(&vals["A0"])), mul(tt, tt)));
    assert!(eq(q(r(&vals["A1"])), mul(g11, tt)));
    assert!(eq(q(r(&vals["A2"])), mul((-g12.0, g12.1), tt)));
    assert!(eq(q(r(&vals["A3"])), mul((-g21.0, g21.1), tt)));
}
