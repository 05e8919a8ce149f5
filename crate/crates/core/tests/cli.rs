use std::io::Write;
use std::process::Command;

fn mustafin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mustafin")).args(args).output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr);
    (out.status.code().unwrap(), text)
}

fn config_file(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn verify_line() {
    let (code, out) = mustafin(&["verify", "d2-line"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("PASS"), "{out}");
}

#[test]
fn fiber_as_json() {
    let cfg = config_file("d=2\nflag=1\nlattice diag=0,0\nlattice diag=1,0\n");
    let (code, out) = mustafin(&["--config", cfg.path().to_str().unwrap(), "--json", "fiber"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.to_string().contains("p1_1_1*p2_1_2"), "{v}");
}

#[test]
fn bad_config_is_a_usage_error() {
    let cfg = config_file("d=2\nflag=1\nlattice diag=0,x\n");
    let (code, out) = mustafin(&["--config", cfg.path().to_str().unwrap(), "components"]);
    assert_eq!(code, 2);
    assert!(out.contains("at 3"), "{out}");
    let (code, _) = mustafin(&["components"]);
    assert_eq!(code, 2);
}

#[test]
fn check_passes_on_two_vertices() {
    let cfg = config_file("d=3\nflag=1,2\nlattice diag=0,0,0\nlattice matrix=[[1,t,0],[0,t,1],[t^2,0,1]]\n");
    let (code, out) = mustafin(&["--config", cfg.path().to_str().unwrap(), "check"]);
    assert_eq!(code, 0, "{out}");
}
