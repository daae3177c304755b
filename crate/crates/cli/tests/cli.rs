use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus(name: &str) -> String {
    root().join("corpus").join(format!("{name}.json")).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drc-kit")).args(args).output().expect("spawn drc-kit")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_passes_on_bundled_files() {
    for (kind, file) in [("drc", "b2"), ("pa", "diamond"), ("cpc", "cpc_rb2"), ("biordered", "cpc_sxc3")] {
        let o = run(&["check", kind, &corpus(file)]);
        assert_eq!(o.status.code(), Some(0), "{kind} {file}: {}", stdout(&o));
    }
}

#[test]
fn round_trips_print_ok() {
    let o = run(&["roundtrip", &corpus("rb2")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("S(C(S)) = S: OK"));
    let o = run(&["roundtrip", &corpus("cpc_b2")]);
    assert!(stdout(&o).contains("C(S(C)) = C: OK"));
}

#[test]
fn functor_output_is_the_bundled_file() {
    let o = run(&["functor", "c", &corpus("b2")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), std::fs::read_to_string(corpus("cpc_b2")).unwrap());
    let o = run(&["functor", "s", &corpus("cpc_b2")]);
    assert_eq!(stdout(&o), std::fs::read_to_string(corpus("b2")).unwrap());
}

#[test]
fn printed_imaoka_triple_fails_alone() {
    let o = run(&["star", "counterexamples"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let fails: Vec<&str> = text.lines().filter(|l| l.contains("FAIL")).collect();
    assert_eq!(fails.len(), 1, "{text}");
    assert!(fails[0].contains("Imaoka"));
}

#[test]
fn malformed_input_and_usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 2, \"mul\": [[0]]}").unwrap();
    assert_eq!(run(&["check", "drc", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["check", "drc", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["search", "--satisfy", "q7", "--violate", "p4", "--size", "2"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn non_drc_semigroup_fails_the_check() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("z2.json");
    // cyclic group of order two with the identity as the only projection image
    std::fs::write(&f, "{\"n\": 2, \"mul\": [[0, 1], [1, 0]], \"D\": [1, 1], \"R\": [1, 1]}").unwrap();
    assert_eq!(run(&["check", "drc", f.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn json_reports_parse() {
    let o = run(&["--format", "json", "check", "drc", &corpus("b2")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
    let o = run(&["--format", "json", "star", "counterexamples"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(false));
}

#[test]
fn thread_count_does_not_change_results() {
    let args = ["search", "--satisfy", "p1..p5", "--violate", "p6", "--size", "3"];
    let one = Command::new(env!("CARGO_BIN_EXE_drc-kit")).env("DRC_KIT_THREADS", "1").args(args).output().unwrap();
    let many = run(&args);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn search_finds_the_lp4_model() {
    let o = run(&["search", "--satisfy", "lp1,lp2,lp3", "--violate", "lp4", "--size", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let json = &text[text.find('{').unwrap()..];
    let model: serde_json::Value = serde_json::from_str(json).unwrap();
    let bundled: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(corpus("model_lp4")).unwrap()).unwrap();
    assert_eq!(model, bundled["table"]);
}

#[test]
fn corpus_write_reproduces_the_shipped_files() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["corpus", "write", dir.path().to_str().unwrap()]).status.code(), Some(0));
    let mut count = 0;
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let p = entry.unwrap().path();
        let shipped = root().join("corpus").join(p.file_name().unwrap());
        assert_eq!(std::fs::read(&p).unwrap(), std::fs::read(&shipped).unwrap(), "{}", p.display());
        count += 1;
    }
    assert_eq!(count, std::fs::read_dir(root().join("corpus")).unwrap().count());
}

#[test]
fn free_mp_and_pinv_run() {
    let o = run(&["free", "--max-len", "4", &corpus("const2")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["mp", &corpus("const2")]);
    assert_eq!(o.status.code(), Some(0));
    let s: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(s["n"], 4);
    assert_eq!(run(&["fundamental", &corpus("b2")]).status.code(), Some(0));
    assert_eq!(run(&["fundamental", &corpus("sxc3")]).status.code(), Some(1));
    let o = run(&["star", "pinv", "[[\"1\",\"1\"],[\"0\",\"0\"]]"]);
    assert!(stdout(&o).contains("[1/2 0; 1/2 0]"));
}
