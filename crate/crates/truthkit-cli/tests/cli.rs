use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;
use truthkit::gen;
use truthkit::io::{to_value, StructureJson};

const M0: &str = r#"{"types":["p","q"],"instances":["1","2","3"],"incidence":[["1","p"],["2","p"],["2","q"],["3","q"]]}"#;
const T0: &str = r#"{"types":["p","q"],"sequents":[{"lhs":["p"],"rhs":["q"]}]}"#;
const TRIANGLE: &str = r#"{"nodes":["A","B","C"],"edges":[{"id":"f","src":"A","tgt":"B"},{"id":"g","src":"B","tgt":"C"},{"id":"h","src":"A","tgt":"C"}]}"#;

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

fn truthkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_truthkit")).args(args).env_remove("TRUTHKIT_MAX_TYPES").output().unwrap()
}

fn s(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn error_kind(o: &Output) -> String {
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn satisfies_and_friends() {
    let d = Dir::new();
    let (m, t) = (d.file("m.json", M0), d.file("t.json", T0));
    assert_eq!(stdout(&truthkit(&["satisfies", "--cls", s(&m), "--thy", s(&t)])), json!({"satisfies": false}));
    assert_eq!(stdout(&truthkit(&["entails", "--thy", s(&t), "--lhs", "p", "--rhs", "q"])), json!({"entails": true}));
    assert_eq!(stdout(&truthkit(&["entails", "--thy", s(&t), "--lhs", "q", "--rhs", "p"])), json!({"entails": false}));
    // every nonempty state of M0 is one of three; the empty state is excluded
    let intent = stdout(&truthkit(&["intent", "--cls", s(&m)]));
    assert_eq!(intent["sequents"], json!([{"lhs": [], "rhs": ["p", "q"]}]));
    let ext = stdout(&truthkit(&["extent", "--thy", s(&t)]));
    assert_eq!(ext["instances"], json!(["{p,q}", "{q}", "{}"]));
    let closed = stdout(&truthkit(&["close", "--thy", s(&t)]));
    assert_eq!(closed["sequents"].as_array().unwrap().len(), 8);
}

#[test]
fn flow_both_ways() {
    let d = Dir::new();
    let f = d.file("f.json", r#"{"source":["a","b"],"target":["p","q"],"map":{"a":"p","b":"p"}}"#);
    let t1 = d.file("t1.json", r#"{"types":["a","b"],"sequents":[{"lhs":["a"],"rhs":["b"]}]}"#);
    let t2 = d.file("t.json", T0);
    let out = stdout(&truthkit(&["flow", "--direct", "--map", s(&f), "--thy", s(&t1)]));
    assert_eq!(out["sequents"], json!([{"lhs": ["p"], "rhs": ["p"]}]));
    let out = stdout(&truthkit(&["flow", "--inverse", "--map", s(&f), "--thy", s(&t2)]));
    assert_eq!(out["types"], json!(["a", "b"]));
    // neither direction given
    assert_eq!(error_kind(&truthkit(&["flow", "--map", s(&f), "--thy", s(&t1)])), "UsageError");
}

#[test]
fn logic_verbs() {
    let d = Dir::new();
    let m = d.file("m.json", M0);
    let nat = stdout(&truthkit(&["nat", "--cls", s(&m)]));
    let l = d.file("l.json", &nat.to_string());
    let sum = stdout(&truthkit(&["sum", "--logic", s(&l)]));
    assert_eq!(sum, serde_json::from_str::<Value>(M0).unwrap());
    let join = stdout(&truthkit(&["join", "--logic", s(&l)]));
    assert_eq!(join, nat);
}

#[test]
fn caps_and_bad_input_exit_2() {
    let d = Dir::new();
    let big = d.file("big.json", r#"{"types":["a","b","c","d","e","f","g"],"sequents":[]}"#);
    assert_eq!(error_kind(&truthkit(&["close", "--thy", s(&big)])), "SizeCapExceeded");
    let unknown = d.file("u.json", r#"{"types":["p"],"instances":["1"],"incidence":[["1","zz"]]}"#);
    assert_eq!(error_kind(&truthkit(&["nat", "--cls", s(&unknown)])), "ValidationError");
    let garbage = d.file("g.json", "{");
    assert_eq!(error_kind(&truthkit(&["nat", "--cls", s(&garbage)])), "ParseError");
    // a theory where a classification is expected
    let t = d.file("t.json", T0);
    assert_eq!(error_kind(&truthkit(&["nat", "--cls", s(&t)])), "ValidationError");
    assert_eq!(error_kind(&truthkit(&["nope"])), "UsageError");
    let env = Command::new(env!("CARGO_BIN_EXE_truthkit"))
        .args(["close", "--thy", s(&big)])
        .env("TRUTHKIT_MAX_TYPES", "7")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(0));
}

#[test]
fn laws_exit_codes_and_report_envelope() {
    let all = truthkit(&["laws", "--suite", "all", "--max-types", "3", "--seed", "7"]);
    let reports = stdout(&all);
    assert_eq!(reports.as_array().unwrap().len(), truthkit::fibered::LAW_IDS.len());
    assert_eq!(error_kind(&truthkit(&["laws", "--suite", "nope"])), "UnknownLaw");
    let wrapped = stdout(&truthkit(&["laws", "--suite", "pr-functor", "--bundles", "2", "--report"]));
    assert_eq!(wrapped["verb"], "laws");
    assert_eq!(wrapped["status"], 0);
    assert_eq!(wrapped["result"][0]["law"], "pr-functor");
    let again = truthkit(&["laws", "--suite", "all", "--max-types", "3", "--seed", "7"]);
    assert_eq!(all.stdout, again.stdout);
}

#[test]
fn dgm_verbs() {
    let d = Dir::new();
    let g = d.file("g.json", TRIANGLE);
    let e = d.file("e.json", r#"[[["f","g"],["h"]]]"#);
    let paths = stdout(&truthkit(&["dgm", "paths", "--graph", s(&g)]));
    assert_eq!(paths["morphisms"].as_array().unwrap().len(), 7);
    let q = stdout(&truthkit(&["dgm", "quotient", "--graph", s(&g), "--equations", s(&e)]));
    assert_eq!(q["category"]["morphisms"].as_array().unwrap().len(), 6);
    assert_eq!(q["classes"]["f;g"], "h");
    let diagram = json!({
        "graph": serde_json::from_str::<Value>(TRIANGLE).unwrap(),
        "category": q["category"],
        "nodes": {"A": "A", "B": "B", "C": "C"},
        "edges": {"f": "f", "g": "g", "h": "h"},
    });
    let dp = d.file("d.json", &diagram.to_string());
    let sat = stdout(&truthkit(&["dgm", "satisfies", "--diagram", s(&dp), "--equations", s(&e)]));
    assert_eq!(sat["satisfies"], true);
    let f = stdout(&truthkit(&["dgm", "factor", "--diagram", s(&dp), "--equations", s(&e)]));
    assert_eq!(f["morphisms"]["h"], "h");
    // into the free category the equation fails and nothing factors
    let free = json!({
        "graph": serde_json::from_str::<Value>(TRIANGLE).unwrap(),
        "category": paths,
        "nodes": {"A": "A", "B": "B", "C": "C"},
        "edges": {"f": "f", "g": "g", "h": "h"},
    });
    let fp = d.file("free.json", &free.to_string());
    let sat = stdout(&truthkit(&["dgm", "satisfies", "--diagram", s(&fp), "--equations", s(&e)]));
    assert_eq!(sat["satisfies"], false);
    assert_eq!(error_kind(&truthkit(&["dgm", "factor", "--diagram", s(&fp), "--equations", s(&e)])), "DoesNotSatisfy");
    let cyc = d.file("c.json", r#"{"nodes":["A"],"edges":[{"id":"l","src":"A","tgt":"A"}]}"#);
    assert_eq!(error_kind(&truthkit(&["dgm", "paths", "--graph", s(&cyc)])), "PathSpaceInfinite");
}

#[test]
fn fol_verbs() {
    let d = Dir::new();
    let send = d.file(
        "send.json",
        r#"{"frame":"send","roles":{"agent":"Adam","patient":"Eve","object":"flowers","instrument":"email"}}"#,
    );
    let a = stdout(&truthkit(&["fol", "from-frames", "--frames", s(&send)]));
    assert_eq!(a["tuples"]["send"]["agent"], "Adam");
    let ap = d.file("a.json", &a.to_string());
    assert_eq!(stdout(&truthkit(&["fol", "validate", "--structure", s(&ap)]))["valid"], true);
    assert_eq!(error_kind(&truthkit(&["fol", "to-dataset", "--structure", s(&ap)])), "NotUnified");

    let u = gen::unified_structure(&mut gen::rng(3), 3, 4);
    let up = d.file("u.json", &to_value(&StructureJson::from_domain(&u)).to_string());
    let data = stdout(&truthkit(&["fol", "to-dataset", "--structure", s(&up)]));
    let dp = d.file("data.json", &data.to_string());
    let back = stdout(&truthkit(&["fol", "from-dataset", "--dataset", s(&dp)]));
    assert_eq!(back, to_value(&StructureJson::from_domain(&u)));

    // the identity functor is a morphism of a state to itself
    let tables: serde_json::Map<String, Value> =
        data["schema"]["objects"].as_array().unwrap().iter().map(|t| (t.as_str().unwrap().to_string(), t.clone())).collect();
    let morphisms: serde_json::Map<String, Value> =
        data["schema"]["morphisms"].as_array().unwrap().iter().map(|m| (m["id"].as_str().unwrap().to_string(), m["id"].clone())).collect();
    let h = d.file("h.json", &json!({"objects": tables, "morphisms": morphisms}).to_string());
    let out = stdout(&truthkit(&["fol", "check-morphism", "--functor", s(&h), "--source", s(&dp), "--target", s(&dp)]));
    assert_eq!(out, json!({"morphism": true}));
}

#[test]
fn pretty_and_output_file() {
    let d = Dir::new();
    let (m, t) = (d.file("m.json", M0), d.file("t.json", T0));
    let o = truthkit(&["satisfies", "--cls", s(&m), "--thy", s(&t), "--pretty"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "{\n  \"satisfies\": false\n}\n");
    let out = d.0.path().join("out.json");
    let o = truthkit(&["satisfies", "--cls", s(&m), "--thy", s(&t), "--output", s(&out), "--timing"]);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("satisfies: "));
    assert_eq!(std::fs::read_to_string(out).unwrap(), "{\"satisfies\":false}\n");
}
