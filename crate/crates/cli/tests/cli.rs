use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const K3: &str = "space K3\nmode lukasiewicz 8\npoints p q r\nlambda {q} : p=2 q=0\nlambda {r} : q=2 r=0\n";
const MLINE: &str =
    "space Mline\nmode lukasiewicz 8\npoints 1 2 4\nlambda {1} : 2=1 4=3\nlambda {2} : 1=1 4=2\nlambda {4} : 1=3 2=2\n";

fn apxconv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apxconv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Files(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, text: &str) -> String {
        let p: PathBuf = self.0.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }
}

#[test]
fn reflect_to_ap_on_k3() {
    let f = Files::new();
    let k3 = f.write("k3.space", K3);
    let o = apxconv(&["reflect", &k3, "--to", "ap"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("lambda {r} : p=4 q=2 r=0"), "{out}");
    let t = f.write("t.space", &out);
    let o = apxconv(&["check", &t, "--all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn theorems_on_mline_pass() {
    let f = Files::new();
    let m = f.write("mline.space", MLINE);
    let o = apxconv(&["check", &m, "--theorems"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = apxconv(&["closure", &m, "--set", "{1,2}"]);
    let out = stdout(&o);
    assert!(out.contains("adh {1,2} : 1=0 2=0 4=2"), "{out}");
    assert!(out.contains("cl {1,2} : 1=0 2=0 4=2"), "{out}");
}

#[test]
fn gen_is_deterministic() {
    let a = apxconv(&["gen", "--seed", "7", "--points", "3", "--chain", "4"]);
    let b = apxconv(&["gen", "--seed", "7", "--points", "3", "--chain", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = apxconv(&["gen", "--seed", "8", "--points", "3", "--chain", "4", "--ap"]);
    assert_eq!(c.status.code(), Some(0));
    let f = Files::new();
    let g = f.write("g.space", &stdout(&c));
    assert_eq!(apxconv(&["frame", &g, "--check", "vap"]).status.code(), Some(0));
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let f = Files::new();
    let bad = f.write("bad.space", "mode lukasiewicz 8\npoints p q\nlambda {q} : p=9\n");
    let o = apxconv(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(apxconv(&["validate", "/no/such/file"]).status.code(), Some(2));
    assert_eq!(apxconv(&["gen", "--seed", "1", "--points", "7", "--chain", "4"]).status.code(), Some(2));
    assert_eq!(apxconv(&["check", &bad]).status.code(), Some(2));
    assert_eq!(apxconv(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn violations_exit_1_with_witnesses() {
    let f = Files::new();
    let uncentered = f.write("u.space", "mode lukasiewicz 8\npoints p q\nlambda {p} : p=1\n");
    assert_eq!(apxconv(&["validate", &uncentered]).status.code(), Some(1));
    let k3 = f.write("k3.space", K3);
    let o = apxconv(&["frame", &k3, "--check", "vap", "--format", "lines"]);
    assert_eq!(o.status.code(), Some(1));
    let line = stdout(&o);
    let fields: Vec<&str> = line.trim_end().split('\t').collect();
    assert_eq!(fields[..2], ["frame.vap", "FAIL"]);
    assert!(fields[2].starts_with('{') && fields[2].contains("\"x\":\"p\""), "{line}");
    assert_eq!(apxconv(&["frame", &k3, "--check", "vprap"]).status.code(), Some(0));
}

#[test]
fn contraction_directions() {
    let f = Files::new();
    let k3 = f.write("k3.space", K3);
    let t = f.write("t.space", &stdout(&apxconv(&["reflect", &k3, "--to", "ap"])));
    let id = f.write("id.map", "p -> p\nq -> q\nr -> r\n");
    assert_eq!(apxconv(&["contraction", "--map", &id, "--from", &k3, "--to", &t]).status.code(), Some(0));
    let o = apxconv(&["contraction", "--map", &id, "--from", &t, "--to", &k3, "--format", "lines"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("contraction\tFAIL\t{\"set\":\"{r}\",\"x\":\"p\"}"), "{}", stdout(&o));
}

#[test]
fn reports_are_byte_identical() {
    let f = Files::new();
    let k3 = f.write("k3.space", K3);
    let a = apxconv(&["check", &k3, "--all", "--format", "lines"]);
    let b = apxconv(&["check", &k3, "--all", "--format", "lines"]);
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<String> = stdout(&a).lines().map(|l| l.split('\t').next().unwrap().to_string()).collect();
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
}

#[test]
fn lattice_cap_comes_from_the_environment() {
    let f = Files::new();
    let k3 = f.write("k3.space", K3);
    let o = Command::new(env!("CARGO_BIN_EXE_apxconv"))
        .args(["frame", &k3, "--check", "vcap"])
        .env("APXCONV_MAX_LATTICE", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_apxconv"))
        .args(["frame", &k3, "--check", "vcap"])
        .env("APXCONV_MAX_LATTICE", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
