use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pgcone"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--output", path.to_str().unwrap()]);
    let o = run(&full);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    path
}

fn point_count(path: &Path) -> usize {
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v["points"].as_array().unwrap().len()
}

#[test]
fn construct_then_spectrum_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&str, &[&str], &str, &str); 3] = [
        ("h.json", &["--object", "hyperoval-cone", "--n", "3", "--q", "4"], "2", "hyperoval_cone_pg3_4.csv"),
        ("u.json", &["--object", "unital-cone", "--n", "4", "--q", "4"], "3", "unital_cone_pg4_4.csv"),
        ("m.json", &["--object", "maxarc-cone", "--n", "5", "--q", "2^2", "--d", "2"], "4", "maxarc_cone_pg5_4_d2.csv"),
    ];
    for (file, args, dim, gold) in cases {
        let path = construct(dir.path(), file, args);
        for workers in ["1", "4"] {
            let o = run(&["spectrum", "--input", path.to_str().unwrap(), "--dim", dim, "--workers", workers]);
            assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
            assert_eq!(stdout(&o), golden(gold), "{file} workers={workers}");
            assert!(stderr(&o).contains("counting identities: OK"));
        }
    }
}

#[test]
fn construct_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = construct(dir.path(), "a.json", &["--object", "baer-cone", "--n", "4", "--q", "4", "--r", "1", "--s", "2"]);
    let b = construct(dir.path(), "b.json", &["--object", "baer-cone", "--n", "4", "--q", "4", "--r", "1", "--s", "2"]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(point_count(&a), 117);
}

#[test]
fn construct_sizes() {
    let dir = tempfile::tempdir().unwrap();
    let h = construct(dir.path(), "h.json", &["--object", "hyperoval-cone", "--n", "3", "--q", "4"]);
    assert_eq!(point_count(&h), 25);
    let u = construct(dir.path(), "u.json", &["--object", "unital-cone", "--n", "4", "--q", "9"]);
    assert_eq!(point_count(&u), 2278);
    let o = run(&["construct", "--object", "unital-cone", "--n", "4", "--q", "8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn spectrum_of_empty_set_and_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("e.json");
    std::fs::write(&empty, r#"{"p":2,"h":2,"n":3,"points":[]}"#).unwrap();
    let o = run(&["spectrum", "--input", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "size,count\n0,85\n");

    let bad = dir.path().join("b.json");
    std::fs::write(&bad, r#"{"p":2,"h":2,"n":3,"points":[[0,1,9,1]]}"#).unwrap();
    let o = run(&["spectrum", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("[0, 1, 9, 1]"), "{}", stderr(&o));

    let o = run(&["spectrum", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn spectrum_json_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct(dir.path(), "h.json", &["--object", "hyperoval-cone", "--n", "3", "--q", "4"]);
    let o = run(&["spectrum", "--input", path.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 85);
    assert_eq!(v["identities"], true);
    assert_eq!(v["rows"][1]["size"], 6);
    assert_eq!(v["rows"][1]["count"], 64);
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "--theorem", "hyperoval3", "--q", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("PASS\n"));

    let o = run(&["verify", "--theorem", "maxarc", "--n", "5", "--q", "4", "--d", "2", "--workers", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = run(&["verify", "--theorem", "maxarc", "--n", "5", "--q", "4", "--d", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("3 does not divide 4"), "{}", stderr(&o));

    let o = run(&["verify", "--theorem", "unital", "--n", "4", "--q", "8"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--theorem", "nonsense", "--q", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify", "--theorem", "unital", "--q", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_json_report() {
    let o = run(&["verify", "--theorem", "unital", "--n", "4", "--q", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn feasible_k_tables() {
    let o = run(&["feasible-k", "--theorem", "hyperoval3", "--q", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("feasible_hyperoval3_q4.csv"));

    let o = run(&["feasible-k", "--theorem", "hyperoval3", "--q", "2"]);
    assert_eq!(stdout(&o), "k,t_a,t_b,t_c,pencil\n9,1,8,6,kept\n");

    let o = run(&["feasible-k", "--theorem", "unital", "--n", "4", "--q", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["rows"].as_array().unwrap().iter().any(|r| r["k"] == "149"));

    let o = run(&["feasible-k", "--a", "5", "--b", "5", "--c", "9", "--n", "3", "--q", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o =
        run(&["feasible-k", "--a", "1", "--b", "6", "--c", "9", "--n", "3", "--q", "4", "--lo", "20", "--hi", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn recognize_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct(dir.path(), "m.json", &["--object", "maxarc-cone", "--n", "5", "--q", "4", "--d", "2"]);
    let o = run(&["recognize", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertex_dim"], 2);
    assert_eq!(v["base_size"], 6);
    assert_eq!(v["is_cone_over_vertex"], true);

    let arc = construct(dir.path(), "a.json", &["--object", "hyperoval", "--n", "2", "--q", "4"]);
    let o = run(&["recognize", "--input", arc.to_str().unwrap(), "--format", "csv"]);
    assert!(stdout(&o).contains("vertex_dim,-1\n"), "{}", stdout(&o));
}
