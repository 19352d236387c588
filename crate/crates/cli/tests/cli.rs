use std::path::PathBuf;
use std::process::{Command, Output};

fn repo(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn tmp(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracezero")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn params_accepts_a_valid_curve() {
    let o = run(&["params", "--q", "1021", "--n", "3", "--mu", "5", "--a", "3", "--d", "7", "--tz-order", "1099525"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let j: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["params"]["q"], "1021");
    assert_eq!(j["tz_order"], "1099525");
}

#[test]
fn params_rejects_bad_input() {
    // mu = 1 is a cube, and 15 is not prime.
    assert_eq!(code(&run(&["params", "--q", "1021", "--n", "3", "--mu", "1", "--a", "3", "--d", "7"])), 3);
    assert_eq!(code(&run(&["params", "--q", "15", "--n", "3", "--mu", "2", "--a", "3", "--d", "7"])), 3);
    assert_eq!(code(&run(&["params", "--q", "1021", "--n", "3", "--mu", "5", "--a", "3", "--d", "7", "--tz-order", "1000"])), 3);
}

#[test]
fn identity_round_trips_through_both_schemes() {
    let curve = repo("vectors/curves/q1021_n3.json");
    let o_text = "0,0,0 | 1,0,0";
    for (scheme, rep) in [("semaev", "3,4"), ("ratfun", "0,1020,1")] {
        let o = run(&["compress", "--curve", &curve, "--scheme", scheme, o_text]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).trim(), rep);
        let o = run(&["decompress", "--curve", &curve, "--scheme", scheme, rep]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).trim(), o_text);
    }
}

#[test]
fn random_point_round_trips() {
    let curve = repo("vectors/curves/q64_n5.json");
    let p = stdout(&run(&["point", "--curve", &curve, "--seed", "3"]));
    let p = p.trim();
    for scheme in ["semaev", "ratfun"] {
        let rep = stdout(&run(&["compress", "--curve", &curve, "--scheme", scheme, p]));
        let o = run(&["--format", "json", "decompress", "--curve", &curve, "--scheme", scheme, rep.trim()]);
        assert_eq!(code(&o), 0);
        let fiber: Vec<String> = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(fiber.iter().any(|q| q == p));
    }
}

#[test]
fn shipped_vectors_pass() {
    let o = run(&["vectors", &repo("vectors/published.json")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("7 of 7 cases passed\n"));
}

#[test]
fn mutated_vector_fails_with_a_diff() {
    let text = std::fs::read_to_string(repo("vectors/published.json")).unwrap();
    let mut j: serde_json::Value = serde_json::from_str(&text).unwrap();
    j["cases"][5]["rep"] = "3,5".into();
    let path = tmp("mutated.json", &j.to_string());
    let o = run(&["vectors", &path]);
    assert_eq!(code(&o), 2);
    let out = stdout(&o);
    assert!(out.contains("FAIL semaev n=3, identity"));
    assert!(out.contains("6 of 7 cases passed"));
}

#[test]
fn empty_vector_file_has_no_cases() {
    let o = run(&["vectors", &tmp("empty.json", r#"{"cases": []}"#)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0 of 0 cases passed\n");
}

#[test]
fn exit_codes() {
    let curve = repo("vectors/curves/q1021_n3.json");
    // Malformed input.
    assert_eq!(code(&run(&["compress", "--curve", &curve, "--scheme", "semaev", "1,2"])), 3);
    let o = run(&["vectors", &tmp("broken.json", "{\n\"cases\": [\n  oops\n]}")]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    // Well formed but outside the subgroup or the image.
    assert_eq!(code(&run(&["decompress", "--curve", &curve, "--scheme", "ratfun", "0,5,0"])), 2);
    assert_eq!(code(&run(&["compress", "--curve", &curve, "--scheme", "semaev", "0,0,0 | 1020,0,0"])), 2);
    // Unreadable file.
    assert_eq!(code(&run(&["point", "--curve", "/nonexistent/curve.json"])), 4);
}

#[test]
fn stats_with_one_sample() {
    let o = run(&["--format", "csv", "stats", "--curve", &repo("vectors/curves/e210_924.json"), "--samples", "1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "orbits,count,percent");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].ends_with(",1,100.00"));
}

#[test]
fn bench_reports_compression_counts() {
    let o = run(&[
        "bench", "--curve", &repo("vectors/curves/q79_n3.json"), "--op", "compress", "--scheme", "semaev", "--iters", "1",
    ]);
    assert_eq!(code(&o), 0);
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = r.headers().unwrap().clone();
    let rows: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    let col = |name: &str| &rows[0][headers.iter().position(|h| h == name).unwrap()];
    assert_eq!(col("s"), "3.0");
    assert_eq!(col("m"), "4.0");
    assert_eq!(col("i"), "0.0");
    assert_eq!(col("op"), "compress");
}
