use std::path::PathBuf;
use std::process::{Command, Output};

const SCRIPT: &str = "\
-- quintic of P^4 and a few small maps
ring R = QQ[x,y,z,t,u];
ring S = QQ[y0,y1,y2,y3,y4];
map PHI : R -> S = [x^5, y*x^4, z*x^4+y^5, t*x^4+z^5, u*x^4+t^5];
ring P = QQ[x,y,z];
ring L = QQ[a,b];
map F : P -> P = [x^2*y, x^2*z, x*y*z];
map PR : P -> L = [x, y];
base-locus F;
is-birational PHI;
";

struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str, text: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("ratmaps-cli-{}-{name}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("session.rm");
        std::fs::write(&path, text).unwrap();
        Scratch(path)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        if let Some(dir) = self.0.parent() {
            std::fs::remove_dir_all(dir).ok();
        }
    }
}

fn ratmaps(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratmaps")).args(args).output().unwrap()
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

#[test]
fn run_executes_every_statement() {
    let s = Scratch::new("run", SCRIPT);
    let out = ratmaps(&["run", s.0.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout), "ideal(y*z, x*z, x*y)\ntrue\n");
    assert!(out.stderr.is_empty());
}

#[test]
fn quintic_inverse_without_the_birationality_check() {
    let s = Scratch::new("quintic", SCRIPT);
    let path = s.0.to_str().unwrap();
    let out = ratmaps(&["inverse", path, "--map", "PHI", "--strategy", "hybrid", "--check-birational", "off"]);
    assert_eq!(out.status.code(), Some(0));
    let forms = text(&out.stdout);
    assert!(forms.starts_with("[y0^125, y0^124*y1, "), "{forms}");
}

#[test]
fn verbose_trace_goes_to_stderr() {
    let s = Scratch::new("verbose", SCRIPT);
    let out = ratmaps(&["is-birational", s.0.to_str().unwrap(), "--map", "PHI", "--verbose"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(text(&out.stdout), "true\n");
    let err = text(&out.stderr);
    assert!(err.contains("stage 16"), "{err}");
    assert!(err.contains("5 columns"), "{err}");
}

#[test]
fn exit_codes() {
    let s = Scratch::new("codes", SCRIPT);
    let path = s.0.to_str().unwrap();
    assert_eq!(ratmaps(&["inverse", path, "--map", "PR"]).status.code(), Some(2));
    assert_eq!(ratmaps(&["inverse", path, "--map", "NOPE"]).status.code(), Some(1));
    assert_eq!(ratmaps(&["inverse", path, "--map", "F", "--strategy", "fast"]).status.code(), Some(1));
    assert_eq!(ratmaps(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(ratmaps(&["--help"]).status.code(), Some(0));
    let out = ratmaps(&["bench-gabber", "3", "3", "--strategy", "simis", "--step-limit", "1"]);
    assert_eq!(out.status.code(), Some(3));
    for strategy in ["hybrid", "rees", "simis", "saturation"] {
        let out = ratmaps(&["is-birational", path, "--map", "PR", "--strategy", strategy]);
        assert_eq!((out.status.code(), text(&out.stdout)), (Some(0), "false\n".to_string()), "{strategy}");
    }
}

#[test]
fn parse_errors_name_the_file_and_position() {
    let s = Scratch::new("bad", "ring R = QQ[x,y];\nring S = QQ[a,b];\nmap F : R -> S = [x, y^2];\n");
    let out = ratmaps(&["run", s.0.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = text(&out.stderr);
    assert!(err.starts_with(&format!("{}:3:22: ", s.0.display())), "{err}");
}

#[test]
fn bench_gabber_prints_one_row() {
    let out = ratmaps(&["bench-gabber", "3", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let row = text(&out.stdout);
    assert!(row.starts_with("n=3 d=5 inverse-degree=25 seconds="), "{row}");
    assert_eq!(row.lines().count(), 1);
}

#[test]
fn is_same_compares_two_maps() {
    let s = Scratch::new("same", SCRIPT);
    let out = ratmaps(&["is-same", s.0.to_str().unwrap(), "--map", "F", "--other", "F"]);
    assert_eq!(text(&out.stdout), "true\n");
}
