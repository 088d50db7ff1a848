use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use dualball::geometry::{equal, Polytope};
use dualball::reconstruct::{reconstruct, Budget};
use dualball::{json, LatticeVector};
use tempfile::TempDir;

struct Sandbox {
    dir: TempDir,
}

impl Sandbox {
    fn new() -> Self {
        Sandbox { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

fn run(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualball")).args(args.iter().map(|a| a.as_ref())).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const L1_23: &str = r#"{"kind": "weighted_l1", "dim": 2, "weights": [2, 3]}"#;
const L1_11: &str = r#"{"kind": "weighted_l1", "dim": 2, "weights": [1, 1]}"#;
const SQUARE: &str = r#"{"dim": 2, "vertices": [[1, 1], [1, -1], [-1, 1], [-1, -1]]}"#;
const CROSS: &str = r#"{"dim": 2, "vertices": [[1, 0], [-1, 0], [0, 1], [0, -1]]}"#;

fn polytope(path: &Path) -> Polytope {
    json::polytope_from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn eval_prints_exact_values() {
    let s = Sandbox::new();
    let spec = s.file("l1.json", L1_23);
    let o = run(&[&"eval", &"--spec", &spec, &"--point", &"1,-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "5\n");
    let o = run(&[&"eval", &"--spec", &spec, &"--point", &"0,0"]);
    assert_eq!(stdout(&o), "0\n");
    let o = run(&[&"eval", &"--spec", &spec, &"--point", &"1/2,-1/3"]);
    assert_eq!(stdout(&o), "2\n");
    let o = run(&[&"eval", &"--spec", &spec, &"--point", &"1/4,0"]);
    assert_eq!(stdout(&o), "1/2\n");
}

#[test]
fn eval_errors_map_to_exit_codes() {
    let s = Sandbox::new();
    let spec = s.file("l1.json", L1_23);
    let o = run(&[&"eval", &"--spec", &spec, &"--point", &"1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dimension"));
    let o = run(&[&"eval", &"--spec", &spec, &"--point", &"1,x"]);
    assert_eq!(o.status.code(), Some(2));

    let table = s.file(
        "table.json",
        r#"{"kind": "table", "dim": 2, "entries": [{"point": [1, 0], "value": 1}]}"#,
    );
    let o = run(&[&"eval", &"--spec", &table, &"--point", &"1,0"]);
    assert_eq!(stdout(&o), "1\n");
    let o = run(&[&"eval", &"--spec", &table, &"--point", &"0,1"]);
    assert_eq!(o.status.code(), Some(1));

    let broken = s.file("broken.json", "{\"kind\": \"weighted_l1\",\n \"dim\": 2, \"weights\": [1, }");
    let o = run(&[&"eval", &"--spec", &broken, &"--point", &"1,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = run(&[&"eval", &"--spec", &s.path("missing.json"), &"--point", &"1,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[&"eval", &"--bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reconstruct_writes_polytope_and_certificates() {
    let s = Sandbox::new();
    let spec = s.file("l1.json", L1_11);
    let out = s.path("ball.json");
    let o = run(&[&"reconstruct", &"--spec", &spec, &"--out", &out]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("vertices: 4"));
    assert!(text.contains("all vertices integer: yes"));
    let p = polytope(&out);
    assert!(equal(&p, &json::polytope_from_str(SQUARE).unwrap()));

    // Files re-parse to the in-memory result.
    let r = reconstruct(&json::spec_from_str(L1_11).unwrap(), &Budget::default(), 0).unwrap();
    assert_eq!(p, r.polytope);
    let certs = json::certificates_from_str(&fs::read_to_string(s.path("ball.certificates.json")).unwrap()).unwrap();
    assert_eq!(certs, r.certificates);
}

#[test]
fn reconstruct_special_cases() {
    let s = Sandbox::new();
    let trivial = s.file("t.json", r#"{"kind": "vertices", "dim": 2, "points": [[0, 0]]}"#);
    let out = s.path("t.out.json");
    let o = run(&[&"reconstruct", &"--spec", &trivial, &"--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vertices: 1"));
    assert_eq!(polytope(&out).vertices().len(), 1);

    let pullback = s.file(
        "pb.json",
        r#"{"kind": "pullback", "dim": 2, "matrix": [[1, 0], [0, 0]],
            "inner": {"kind": "weighted_l1", "dim": 2, "weights": [1, 1]}}"#,
    );
    let certs = s.path("pb.certs.json");
    let o = run(&[&"reconstruct", &"--spec", &pullback, &"--out", &s.path("pb.out.json"), &"--certificates", &certs]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("affine dimension 1"));
    assert!(certs.exists());
    let seg = polytope(&s.path("pb.out.json"));
    assert_eq!(seg.integer_vertices().unwrap(), vec![LatticeVector::from_ints(&[-1, 0]), LatticeVector::from_ints(&[1, 0])]);

    let table = s.file("table.json", r#"{"kind": "table", "dim": 1, "entries": [{"point": [1], "value": 1}]}"#);
    let o = run(&[&"reconstruct", &"--spec", &table, &"--out", &s.path("x.json")]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[&"reconstruct", &"--spec", &pullback, &"--out", &s.path("x.json"), &"--window", &"1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[&"reconstruct", &"--spec", &pullback, &"--out", &s.path("nodir/x.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reconstruct_reports_budget_exhaustion() {
    let s = Sandbox::new();
    let spec = s.file("v.json", r#"{"kind": "vertices", "dim": 2, "points": [[5, 1], [1, 4], [-3, 2]]}"#);
    let o = run(&[&"reconstruct", &"--spec", &spec, &"--out", &s.path("o.json"), &"--max-rounds", &"1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("incomplete"));
}

#[test]
fn certify_outcomes() {
    let s = Sandbox::new();
    let spec = s.file("l1.json", L1_11);
    let square = s.file("square.json", SQUARE);
    let cross = s.file("cross.json", CROSS);
    let o = run(&[&"certify", &"--spec", &spec, &"--polytope", &square, &"--radius", &"5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
    assert!(stdout(&o).contains("points checked: 121"));

    let o = run(&[&"certify", &"--spec", &spec, &"--polytope", &cross, &"--radius", &"5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample: x = (1, 1), N(x) = 2, h_P(x) = 1"), "{}", stdout(&o));

    let o = run(&[&"certify", &"--spec", &spec, &"--polytope", &cross, &"--radius", &"0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("points checked: 1"));
    assert!(stderr(&o).contains("warning"));

    let bad = s.file("bad.json", r#"{"dim": 2, "vertices": [[1, 0], [2]]}"#);
    let o = run(&[&"certify", &"--spec", &spec, &"--polytope", &bad]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn emit_plot_formats() {
    let s = Sandbox::new();
    let square = s.file("square.json", SQUARE);
    let o = run(&[&"emit-plot", &"--polytope", &square, &"--format", &"csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<&str> = std::str::from_utf8(&o.stdout).unwrap().lines().collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0], rows[4]);

    let oct = s.file(
        "oct.json",
        r#"{"dim": 3, "vertices": [[1,0,0],[-1,0,0],[0,1,0],[0,-1,0],[0,0,1],[0,0,-1]]}"#,
    );
    let mesh = s.path("oct.obj");
    let o = run(&[&"emit-plot", &"--polytope", &oct, &"--format", &"obj", &"--out", &mesh]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&mesh).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 6);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 8);

    let o = run(&[&"emit-plot", &"--polytope", &oct, &"--format", &"csv"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[&"emit-plot", &"--polytope", &square, &"--format", &"obj"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trace_and_overlay() {
    let s = Sandbox::new();
    let spec = s.file("linf.json", r#"{"kind": "weighted_linf", "dim": 2, "weights": [1, 1]}"#);
    let trace = s.path("trace.json");
    let o = run(&[
        &"trace", &"--spec", &spec, &"--direction", &"1,3", &"--offset", &"2,0", &"--y0", &"0,1", &"--n-max", &"5",
        &"--out", &trace,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&[&"emit-plot", &"--trace", &trace]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(text.lines().next(), Some("n,lambda,value,gap"));
    assert_eq!(rows.len(), 6);
    let gaps: Vec<&str> = rows.iter().map(|r| r[3]).collect();
    assert_eq!(gaps, vec!["2", "0", "0", "0", "0", "0"]);
    assert_eq!(rows[3], vec!["3", "9", "9", "0"]);

    let o = run(&[&"trace", &"--spec", &spec, &"--direction", &"1,3", &"--y0", &"1,0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn polar_and_hull() {
    let s = Sandbox::new();
    let square = s.file("square.json", SQUARE);
    let out = s.path("polar.json");
    let o = run(&[&"polar", &"--polytope", &square, &"--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(equal(&polytope(&out), &json::polytope_from_str(CROSS).unwrap()));

    let seg = s.file("seg.json", r#"{"dim": 2, "vertices": [[1, 0], [-1, 0]]}"#);
    let o = run(&[&"polar", &"--polytope", &seg, &"--out", &s.path("x.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("polar undefined"));

    let pts = s.file("pts.json", r#"[[1, 1], [1, -1], [-1, 1], [-1, -1], [0, 0]]"#);
    let out = s.path("hull.json");
    let o = run(&[&"hull", &"--points", &pts, &"--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(polytope(&out).vertices().len(), 4);

    let empty = s.file("empty.json", "[]");
    let o = run(&[&"hull", &"--points", &empty, &"--out", &s.path("y.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let s = Sandbox::new();
    let spec = s.file(
        "max.json",
        r#"{"kind": "max", "dim": 3, "terms": [
            {"kind": "weighted_l1", "dim": 3, "weights": [1, 2, 1]},
            {"kind": "weighted_linf", "dim": 3, "weights": [3, 1, 2]}]}"#,
    );
    let outs: Vec<(Vec<u8>, Vec<u8>)> = ["a", "b"]
        .iter()
        .map(|n| {
            let out = s.path(&format!("{n}.json"));
            let o = run(&[&"reconstruct", &"--spec", &spec, &"--out", &out, &"--seed", &"5"]);
            assert_eq!(o.status.code(), Some(0));
            (fs::read(&out).unwrap(), fs::read(s.path(&format!("{n}.certificates.json"))).unwrap())
        })
        .collect();
    assert_eq!(outs[0], outs[1]);
    assert!(outs[0].0.ends_with(b"\n"));
}
