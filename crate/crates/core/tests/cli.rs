use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_threeorder"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SQUARE_CENTER: &str = r#"{"n": 5, "points": [[0, 0], [2, 0], [2, 2], [0, 2], [1, 1]]}"#;
// o(013) = o(123) = o(203) = +1 but o(012) = -1
const VIOLATION: &str = r#"{"n": 4, "triples": [[0, 1, 2, -1], [0, 1, 3, 1], [0, 2, 3, -1], [1, 2, 3, 1]]}"#;

#[test]
fn ordertype_square_center() {
    let dir = TempDir::new().unwrap();
    let pts = put(&dir, "sq.json", SQUARE_CENTER);
    let out = dir.path().join("sq.map.json");
    let o = run(&["ordertype", s(&pts), "-o", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("zero triples: 2"));
    assert!(stdout(&o).contains("general position: false"));
    let map: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let zeros: Vec<&Value> = map["triples"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|t| t[3] == 0)
        .collect();
    assert_eq!(zeros.len(), 2);
    assert_eq!(zeros[0], &serde_json::json!([0, 2, 4, 0]));
    assert_eq!(zeros[1], &serde_json::json!([1, 3, 4, 0]));
}

#[test]
fn ordertype_triangle_and_errors() {
    let dir = TempDir::new().unwrap();
    let tri = put(
        &dir,
        "t.json",
        r#"{"n": 3, "points": [[0, 1, 0, 1], [1, 1, 0, 1], [0, 1, 1, 1]]}"#,
    );
    let o = run(&["ordertype", s(&tri)]);
    assert_eq!(code(&o), 0);
    let map: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(map["triples"], serde_json::json!([[0, 1, 2, 1]]));

    let dup = put(&dir, "d.json", r#"{"n": 3, "points": [[0, 0], [1, 0], [0, 0]]}"#);
    assert_eq!(code(&run(&["ordertype", s(&dup)])), 3);
    let bad = put(&dir, "b.json", r#"{"n": 3, "points": [[0, 0], [1"#);
    assert_eq!(code(&run(&["ordertype", s(&bad)])), 2);
    assert_eq!(code(&run(&["ordertype", s(&dir.path().join("missing.json"))])), 2);
}

#[test]
fn validate_modes() {
    let dir = TempDir::new().unwrap();
    let pts = put(&dir, "sq.json", SQUARE_CENTER);
    let map = dir.path().join("sq.map.json");
    assert_eq!(code(&run(&["ordertype", s(&pts), "-o", s(&map)])), 0);

    let o = run(&["validate", s(&map), "--partial"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "OK");
    assert_eq!(code(&run(&["validate", s(&map)])), 0);
    assert_eq!(code(&run(&["validate", s(&map), "--total"])), 4);

    let bad = put(&dir, "v.json", VIOLATION);
    let o = run(&["validate", s(&bad)]);
    assert_eq!(code(&o), 1);
    assert!(
        stdout(&o).starts_with("VIOLATION (a, b, c, d) = (0, 1, 2, 3)"),
        "{}",
        stdout(&o)
    );

    let incomplete = put(&dir, "i.json", r#"{"n": 4, "triples": [[0, 1, 2, 1]]}"#);
    assert_eq!(code(&run(&["validate", s(&incomplete)])), 2);
    let garbage = put(&dir, "g.json", "not json");
    assert_eq!(code(&run(&["validate", s(&garbage)])), 2);
}

#[test]
fn classify_reports() {
    let dir = TempDir::new().unwrap();
    let hex = dir.path().join("hex.json");
    assert_eq!(code(&run(&["construct", "ngon", "--n", "6", "-o", s(&hex)])), 0);
    let map = dir.path().join("hex.map.json");
    assert_eq!(code(&run(&["ordertype", s(&hex), "-o", s(&map)])), 0);
    let o = run(&["classify", s(&map)]);
    assert_eq!(code(&o), 0);
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["schema"], 1);
    assert_eq!(r["is_convex_type"], true);
    assert_eq!(r["is_fast_growing"], true);
    assert_eq!(r["is_t3o"], true);

    let again = run(&["classify", s(&map)]);
    assert_eq!(o.stdout, again.stdout);

    let tri = put(&dir, "t.json", r#"{"n": 3, "triples": [[0, 1, 2, -1]]}"#);
    let r: Value = serde_json::from_slice(&run(&["classify", s(&tri)]).stdout).unwrap();
    for flag in ["is_p3o", "is_t3o", "is_convex_type", "is_fast_growing"] {
        assert_eq!(r[flag], true, "{flag}");
    }

    let big = dir.path().join("big.json");
    assert_eq!(code(&run(&["construct", "ngon", "--n", "10", "-o", s(&big)])), 0);
    let big_map = dir.path().join("big.map.json");
    assert_eq!(code(&run(&["ordertype", s(&big), "-o", s(&big_map)])), 0);
    assert_eq!(code(&run(&["classify", s(&big_map)])), 5);
}

#[test]
fn census_small() {
    let dir = TempDir::new().unwrap();
    let out3 = dir.path().join("n3");
    let o = run(&["census", "--n", "3", "--grid", "3", "--out", s(&out3)]);
    assert_eq!(code(&o), 0);
    let index: Value = serde_json::from_str(&fs::read_to_string(out3.join("index.json")).unwrap()).unwrap();
    assert_eq!(index["classes"], 1);

    let a = dir.path().join("g4");
    let b = dir.path().join("g5");
    assert_eq!(code(&run(&["census", "--n", "4", "--grid", "4", "--out", s(&a)])), 0);
    assert_eq!(code(&run(&["census", "--n", "4", "--grid", "5", "--out", s(&b)])), 0);
    let ia: Value = serde_json::from_str(&fs::read_to_string(a.join("index.json")).unwrap()).unwrap();
    let ib: Value = serde_json::from_str(&fs::read_to_string(b.join("index.json")).unwrap()).unwrap();
    assert_eq!(ia["classes"], ib["classes"]);
    for e in ia["entries"].as_array().unwrap() {
        let code = e["code"].as_str().unwrap();
        for suffix in ["map", "points", "report"] {
            assert!(a.join(format!("{code}.{suffix}.json")).exists());
        }
    }

    let t1 = dir.path().join("t1");
    let t4 = dir.path().join("t4");
    assert_eq!(
        code(&run(&[
            "--threads",
            "1",
            "census",
            "--n",
            "5",
            "--grid",
            "5",
            "--out",
            s(&t1)
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "--threads",
            "4",
            "census",
            "--n",
            "5",
            "--grid",
            "5",
            "--out",
            s(&t4)
        ])),
        0
    );
    assert_eq!(
        fs::read(t1.join("index.json")).unwrap(),
        fs::read(t4.join("index.json")).unwrap()
    );

    assert_eq!(
        code(&run(&[
            "census",
            "--n",
            "8",
            "--grid",
            "5",
            "--out",
            s(&dir.path().join("x"))
        ])),
        5
    );
}

#[test]
fn construct_commands() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("fg.json");
    let o = run(&["construct", "fastgrow", "--pi", "2,3,1", "--base", "6", "-o", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verified"));
    let pts: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(pts["n"], 3);
    assert_eq!(
        pts["points"],
        serde_json::json!([[1, 1, 36, 1], [2, 1, 216, 1], [3, 1, 6, 1]])
    );

    assert_eq!(code(&run(&["construct", "fastgrow", "--pi", "1,1,2"])), 2);

    let tri = put(&dir, "tri.json", r#"{"n": 3, "points": [[0, 0], [4, 0], [0, 4]]}"#);
    let o = run(&["construct", "amplify", "--k", "2", s(&tri)]);
    assert_eq!(code(&o), 0);
    let pts: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(pts["n"], 9);

    let hex = dir.path().join("hex.json");
    assert_eq!(code(&run(&["construct", "ngon", "--n", "6", "-o", s(&hex)])), 0);
    assert_eq!(code(&run(&["construct", "amplify", "--k", "9", s(&hex)])), 5);

    let o = run(&["construct", "square-center"]);
    assert_eq!(code(&o), 0);
    let pts: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(pts["n"], 5);
}

#[test]
fn density_check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let quad = put(
        &dir,
        "q.json",
        r#"{"n": 4, "points": [[0, 0], [1, 0], [1, 1], [0, 1]]}"#,
    );
    let o = run(&["density-check", s(&quad), "--k", "2", "--subset-size", "10"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("subsets: 8008"));
    let o = run(&["density-check", s(&quad), "--k", "2", "--subset-size", "9"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("copy-free subset: ["));
    assert_eq!(
        code(&run(&["density-check", s(&quad), "--k", "2", "--subset-size", "17"])),
        2
    );
}

#[test]
fn enumerate_counts() {
    let o = run(&["enumerate", "--n", "4"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(code(&run(&["enumerate", "--n", "7"])), 5);
}

#[test]
fn bad_arguments_are_parse_errors() {
    assert_eq!(
        code(&run(&["census", "--n", "x", "--grid", "3", "--out", "/tmp/never"])),
        2
    );
    assert_eq!(code(&run(&["validate", "a.json", "--total", "--partial"])), 2);
}

#[test]
fn shipped_dataset_is_current() {
    let shipped = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/six-points");
    let dir = TempDir::new().unwrap();
    let fresh = dir.path().join("six");
    let o = run(&[
        "census",
        "--n",
        "6",
        "--min-grid",
        "5",
        "--grid",
        "8",
        "--out",
        s(&fresh),
    ]);
    assert_eq!(code(&o), 0);
    let names = |d: &Path| {
        let mut v: Vec<String> = fs::read_dir(d)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        v.sort();
        v
    };
    assert_eq!(names(&shipped), names(&fresh));
    for name in names(&fresh) {
        assert_eq!(
            fs::read(shipped.join(&name)).unwrap(),
            fs::read(fresh.join(&name)).unwrap(),
            "{name}"
        );
    }
    let index: Value = serde_json::from_str(&fs::read_to_string(shipped.join("index.json")).unwrap()).unwrap();
    assert_eq!(index["classes"], 16);
    assert_eq!(index["stable"], true);
}
