use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

const LANNER: &str = r#"{"lattice": {"rank": 3, "gram": [[-2, 2, 2], [2, -2, 2], [2, 2, -2]]},
  "vectors": {"a": [1, 0, 0], "b": [0, 1, 0], "c": [0, 0, 1]}}"#;

const CORNER: &str = r#"{"lattice": {"rank": 5, "gram": [[1,0,0,0,0],[0,-1,0,0,0],[0,0,-1,0,0],[0,0,0,-1,0],[0,0,0,0,-1]]},
  "vectors": {"e1": [0,1,0,0,0], "e2": [0,0,1,0,0], "e3": [0,0,0,1,0], "e4": [0,0,0,0,1]}}"#;

const F1: &str = r#"{"ns": {"rank": 2, "gram": [[1, 0], [0, -1]]}, "K": [-3, 1], "h": [1, 0],
  "curves": {"e1": [0, 1], "f": [1, -1]}}"#;

const K_MINUS_E1: &str = r#"{"ns": {"rank": 2, "gram": [[1, 0], [0, -1]]}, "K": [0, -1], "h": [1, 0],
  "curves": {"e1": [0, 1], "f": [1, -1]}}"#;

const MINUS_THREE: &str = r#"{"ns": {"rank": 2, "gram": [[1, 0], [0, -3]]}, "K": [-3, "-1/3"],
  "curves": {"c": [0, 1]}}"#;

const GEOM: &str = r#"{"lattice": {"rank": 3, "gram": [[1,0,0],[0,-1,0],[0,0,-1]]}, "x": [0, 0, 1], "y": [1, 0, "1/2"]}"#;

struct Fixtures {
    dir: TempDir,
}

impl Fixtures {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        for (name, body) in [
            ("lanner", LANNER),
            ("corner", CORNER),
            ("f1", F1),
            ("kme1", K_MINUS_E1),
            ("m3", MINUS_THREE),
            ("geom", GEOM),
        ] {
            std::fs::write(dir.path().join(format!("{name}.json")), body).unwrap();
        }
        Fixtures { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(format!("{name}.json"))
    }
}

fn bin(args: &[&str], input: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hypdiagram"));
    cmd.args(args);
    if let Some(p) = input {
        cmd.arg("--input").arg(p);
    }
    cmd.output().unwrap()
}

fn ok_json(args: &[&str], input: Option<&Path>) -> Value {
    let out = bin(args, input);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn no_floats(v: &Value) -> bool {
    match v {
        Value::Number(n) => n.is_i64() || n.is_u64(),
        Value::Array(a) => a.iter().all(no_floats),
        Value::Object(m) => m.values().all(no_floats),
        _ => true,
    }
}

#[test]
fn bound_example() {
    let v = ok_json(&["bound", "--theorem", "1.4.1", "--c1", "8", "--c2", "9"], None);
    assert_eq!(v["bound"], json!(1124));
    assert_eq!(v["bounds"], json!("dim Λ"));
    let v = ok_json(&["bound", "--theorem", "1.5.1.4", "--c", "1/2", "--d", "0", "--n", "6"], None);
    assert!(v["predicate"]["holds"].is_boolean());
}

#[test]
fn classify_example() {
    let fx = Fixtures::new();
    let v = ok_json(&["classify", "--subset", "a,b,c"], Some(&fx.path("lanner")));
    assert_eq!(v["class"], json!("Hyperbolic"));
    assert_eq!(v["lanner"], json!(true));
    let v = ok_json(&["classify", "--subset", "a"], Some(&fx.path("lanner")));
    assert_eq!((v["class"].clone(), v["dynkin"].clone()), (json!("Elliptic"), json!("A1")));
}

#[test]
fn zariski_example() {
    let fx = Fixtures::new();
    let v = ok_json(&["zariski", "--divisor", "[1,1]"], Some(&fx.path("f1")));
    assert_eq!(v, json!({"P": [1, 0], "N": {"e1": 1}}));
    let v = ok_json(&["zariski", "--divisor", "[3,-1]"], Some(&fx.path("f1")));
    assert_eq!(v["N"], json!({}));
    let v = ok_json(&["kodaira"], Some(&fx.path("f1")));
    assert_eq!(v["kodaira"], json!("2"));
}

#[test]
fn surface_reports() {
    let fx = Fixtures::new();
    let v = ok_json(&["surface", "report", "--variant", "3.4"], Some(&fx.path("f1")));
    assert_eq!((v["bound"].clone(), v["value"].clone(), v["holds"].clone()), (json!(69), json!(2), json!(true)));
    let v = ok_json(&["surface", "report", "--variant", "3.6"], Some(&fx.path("kme1")));
    assert_eq!((v["value"].clone(), v["holds"].clone()), (json!(1), json!(true)));
    let v = ok_json(&["mori"], Some(&fx.path("f1")));
    assert_eq!(v["discrepancy"], json!(true));
    assert_eq!(v["ungenerated_isotropic"][0]["class"], json!([1, -1]));
}

#[test]
fn enumerate_and_discrepancy() {
    let fx = Fixtures::new();
    let v = ok_json(&["enumerate", "--square", "-1", "--kprod", "-1", "--height", "3"], Some(&fx.path("f1")));
    assert_eq!(v["classes"], json!([[0, 1]]));
    let v = ok_json(&["discrepancy"], Some(&fx.path("m3")));
    assert_eq!(v["alphas"], json!({"c": "-1/3"}));
    assert_eq!(v["denominator_lcm"], json!(3));
}

#[test]
fn geometry_and_weights() {
    let fx = Fixtures::new();
    let v = ok_json(&["geom"], Some(&fx.path("geom")));
    assert_eq!(v["cosh_sq_distance_to_mirror"], json!("4/3"));
    let v = ok_json(&["weights2", "--d", "2"], Some(&fx.path("corner")));
    assert_eq!((v["condition1"].clone(), v["condition2"].clone()), (json!(true), json!(true)));
    let v = ok_json(&["weights3", "--d", "2"], Some(&fx.path("corner")));
    assert_eq!(v["condition1"], json!(true));
    let v = ok_json(&["faces"], Some(&fx.path("corner")));
    assert_eq!(v["codim_counts"], json!([1, 4, 6, 4, 1]));
}

#[test]
fn face_lattice_round_trip() {
    let fx = Fixtures::new();
    let v = ok_json(&["faces"], Some(&fx.path("corner")));
    let fl = fx.dir.path().join("fl.json");
    std::fs::write(&fl, serde_json::to_string(&v["face_lattice"]).unwrap()).unwrap();
    let avg = ok_json(&["faceavg"], Some(&fl));
    assert_eq!(avg["dim"], json!(4));
    // the report re-parses and re-serializes to the same bytes
    let raw = bin(&["faceavg"], Some(&fl)).stdout;
    let again = serde_json::to_string_pretty(&serde_json::from_slice::<Value>(&raw).unwrap()).unwrap() + "\n";
    assert_eq!(again.as_bytes(), raw.as_slice());
}

#[test]
fn outputs_are_deterministic_and_exact() {
    let fx = Fixtures::new();
    let runs: Vec<(Vec<&str>, Option<PathBuf>)> = vec![
        (vec!["lattice-sig"], Some(fx.dir.path().join("lat.json"))),
        (vec!["classify"], Some(fx.path("lanner"))),
        (vec!["lanner"], Some(fx.path("lanner"))),
        (vec!["faces", "--witness"], Some(fx.path("corner"))),
        (vec!["faceavg", "--simplex", "4"], None),
        (vec!["weights2", "--d", "1"], Some(fx.path("corner"))),
        (vec!["weights3", "--d", "1"], Some(fx.path("corner"))),
        (vec!["constants"], None),
        (vec!["constants", "--size", "3", "--d", "1"], Some(fx.path("corner"))),
        (vec!["bound", "--theorem", "3.5", "--c1", "1/3", "--c2", "2"], None),
        (vec!["findface", "--normals", "[[0,1,0,0,0]]"], Some(fx.path("corner"))),
        (vec!["geom"], Some(fx.path("geom"))),
        (vec!["zariski", "--divisor", "[1,1]"], Some(fx.path("f1"))),
        (vec!["kodaira"], Some(fx.path("kme1"))),
        (vec!["surface", "report", "--variant", "3.4"], Some(fx.path("f1"))),
        (vec!["discrepancy"], Some(fx.path("m3"))),
        (vec!["mori"], Some(fx.path("f1"))),
        (vec!["enumerate", "--square", "0", "--kprod", "-2", "--height", "2"], Some(fx.path("f1"))),
    ];
    std::fs::write(fx.dir.path().join("lat.json"), r#"{"rank": 2, "gram": [[1, "1/2"], ["1/2", -1]]}"#).unwrap();
    for (args, input) in &runs {
        let a = bin(args, input.as_deref());
        let b = bin(args, input.as_deref());
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert!(no_floats(&v), "{args:?}");
        let text = bin(&[args.as_slice(), &["--format", "text"]].concat(), input.as_deref());
        assert_eq!(text.status.code(), Some(0), "{args:?}");
        assert!(!text.stdout.is_empty());
    }
}

#[test]
fn output_file() {
    let fx = Fixtures::new();
    let out = fx.dir.path().join("out.json");
    let o = bin(&["bound", "--theorem", "intro", "--c1", "8", "--c2", "9", "--output", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["bound"], json!(1124));
}

#[test]
fn exit_codes() {
    let fx = Fixtures::new();
    // usage
    assert_eq!(bin(&["no-such-command"], None).status.code(), Some(1));
    assert_eq!(bin(&["bound", "--theorem", "1.4.1", "--bogus"], None).status.code(), Some(1));
    assert_eq!(bin(&["bound", "--theorem", "1.4.1", "--c1", "0.5"], None).status.code(), Some(1));
    // invalid input
    let float = fx.dir.path().join("float.json");
    std::fs::write(&float, r#"{"rank": 1, "gram": [[1.5]]}"#).unwrap();
    assert_eq!(bin(&["lattice-sig"], Some(&float)).status.code(), Some(2));
    let garbage = fx.dir.path().join("garbage.json");
    std::fs::write(&garbage, "not json").unwrap();
    assert_eq!(bin(&["classify"], Some(&garbage)).status.code(), Some(2));
    assert_eq!(bin(&["bound", "--theorem", "1.4.1", "--c1", "8"], None).status.code(), Some(2));
    assert_eq!(bin(&["classify", "--subset", "zz"], Some(&fx.path("lanner"))).status.code(), Some(2));
    // domain errors
    let o = bin(&["zariski", "--divisor", "[1,-2]"], Some(&fx.path("f1")));
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not negative definite"));
    assert_eq!(bin(&["surface", "report", "--variant", "3.6"], Some(&fx.path("f1"))).status.code(), Some(3));
}
