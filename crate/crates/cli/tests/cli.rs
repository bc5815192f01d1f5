use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn corpus(name: &str) -> String {
    root().join("corpus").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_layconf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_exit_codes() {
    for (file, verdict, code) in [
        ("nkh.trs", "NON-CONFLUENT", 1),
        ("vhuet.trs", "CONFLUENT", 0),
        ("nkh_d.trs", "CONFLUENT", 0),
        ("dxx.trs", "MAYBE", 2),
    ] {
        let o = run(&["check", &corpus(file)]);
        assert_eq!(o.status.code(), Some(code), "{file}");
        assert_eq!(stdout(&o).lines().next(), Some(verdict), "{file}");
    }
    let o = run(&["check", &corpus("dxx.trs")]);
    assert!(stdout(&o).contains("rule 2"));
}

#[test]
fn usage_and_input_errors_exit_3() {
    for args in [
        vec!["frobnicate"],
        vec![],
        vec!["check"],
        vec!["check", "/no/such/file.trs"],
        vec!["check", &corpus("nkh.trs"), "--format", "xml"],
        vec!["check", &corpus("nkh.trs"), "--diagram-depth", "0"],
        vec!["diagram", &corpus("nkh.trs"), "--pair", "9"],
        vec!["rank", &corpus("not_layered.trs"), "a"],
        vec!["unify", "f(x", "x", "--vars", "x"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
    }
    let o = run(&["frobnicate"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Commands:"));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_output_parses() {
    let o = run(&["check", &corpus("nkh.trs"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "NON-CONFLUENT");
    assert_eq!(v["pairs"][0]["evidence"]["left"], "a");
    let o = run(&["ccp", &corpus("vhuet.trs"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for f in ["nkh.trs", "vhuet.trs", "nkh_d.trs"] {
        for fmt in ["text", "json"] {
            let a = run(&["check", &corpus(f), "--format", fmt]);
            let b = run(&["check", &corpus(f), "--format", fmt]);
            assert_eq!(a.stdout, b.stdout);
        }
    }
}

#[test]
fn rank_assumption_is_flagged() {
    let o = run(&["check", &corpus("dxx.trs"), "--assume-rank-nonincreasing"]);
    assert!(stdout(&o).starts_with("!!! WARNING"));
}

#[test]
fn layered_and_rank_subcommands() {
    let o = run(&["layered", &corpus("not_layered.trs")]);
    let out = stdout(&o);
    assert!(out.contains("layered: no") && out.contains("SOF(h(a))"));
    let o = run(&["rank", &corpus("nkh.trs"), "f(c(g),c(g))"]);
    assert_eq!(stdout(&o).trim(), "2");
    let o = run(&["rankcheck", &corpus("fib.trs")]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["rankcheck", &corpus("loop_context.trs")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn unify_and_congruent() {
    let o = run(&["unify", "f(x,x)", "f(y,c(y))", "--vars", "x,y"]);
    let out = stdout(&o);
    assert!(out.contains("omega"), "{out}");
    assert!(out.contains("x = c(y) ∧ y = c(y)"), "{out}");
    let eqs = root().join("crates/cli/tests/fixtures/cyclic.eqs");
    let eqs = eqs.to_string_lossy();
    let o = run(&["congruent", "f(a,z,z)", "f(a,y,c(y))", "--eqs", &eqs, "--vars", "y,z"]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(0), "true".into()));
    let o = run(&["congruent", "f(b,z,z)", "f(a,y,c(y))", "--eqs", &eqs, "--vars", "y,z"]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(1), "false".into()));
}

#[test]
fn diagram_and_subrewrite() {
    let o = run(&["diagram", &corpus("vhuet.trs"), "--pair", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("I = [1]"));
    let o = run(&["diagram", &corpus("nkh.trs"), "--pair", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("no decreasing diagram"));
    let o = run(&["subrewrite", &corpus("nkh.trs"), "f(g,c(g))", "--pos", "root", "--depth", "1"]);
    let out = stdout(&o);
    assert!(out.contains("f(g,c(g)) → a"), "{out}");
}

#[test]
fn corpus_table_is_the_same_with_jobs() {
    let dir = root().join("corpus");
    let dir = dir.to_string_lossy();
    let strip = |o: Output| -> Vec<String> {
        stdout(&o)
            .lines()
            .map(|l| l.rsplit_once(' ').map_or(l, |(a, _)| a).trim_end().to_string())
            .collect()
    };
    let seq = run(&["corpus", &dir]);
    assert_eq!(seq.status.code(), Some(0));
    let seq = strip(seq);
    assert!(seq[0].starts_with("file"));
    assert!(seq.iter().any(|l| l.starts_with("nkh.trs") && l.contains("NON-CONFLUENT")));
    assert_eq!(seq, strip(run(&["corpus", &dir, "--jobs", "4"])));
}
