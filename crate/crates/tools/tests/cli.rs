use std::path::PathBuf;
use std::process::{Command, Output};

use apr_tools::ars_format::parse_ars;
use apr_tools::report::RunReport;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn apr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const RACE: &str = "loc(P0)=crit0 && loc(P1)=crit1";
const WAITING: &str = "loc(P0)=wait0 && b0=true";

#[test]
fn check_a1() {
    let a1 = fixture("a1.ars");
    let o = apr(&[
        "check", "--ars", &a1, "--source", "a", "--target", "c,d", "--mode", "partial",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PartiallyValid\n"));

    let o = apr(&[
        "check", "--ars", &a1, "--source", "a", "--target", "c,d", "--mode", "total",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: a -> (b -> a)*"));

    let o = apr(&["check", "--ars", &a1, "--source", "a", "--target", "c"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: a -> d"));
}

#[test]
fn engines_agree_on_a1() {
    let a1 = fixture("a1.ars");
    let labels = ["a", "b", "c", "d"];
    for p in labels {
        for q in ["", "a", "c", "d", "c,d", "a,b"] {
            for mode in ["partial", "total"] {
                let run = |engine| {
                    let o = apr(&[
                        "check", "--ars", &a1, "--source", p, "--target", q, "--mode", mode,
                        "--engine", engine, "--json",
                    ]);
                    let r = RunReport::from_json(&stdout(&o)).unwrap();
                    (o.status.code(), r.verdict)
                };
                assert_eq!(run("prover"), run("oracle"), "{p} => {q} ({mode})");
            }
        }
    }
}

#[test]
fn peterson_safety_and_liveness() {
    let mdl = fixture("peterson.mdl");
    let o = apr(&["safety", "--model", &mdl, "--from", "init", "--error", RACE]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("safe"));

    let o = apr(&[
        "liveness",
        "--model",
        &mdl,
        "--from",
        WAITING,
        "--goal",
        "loc(P0)=crit0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("live (totally valid)"));

    let o = apr(&[
        "liveness",
        "--ars",
        &fixture("a1.ars"),
        "--from",
        "a",
        "--goal",
        "c,d",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("a -> (b -> a)*"));
}

#[test]
fn unsafe_model_prints_a_path() {
    // without the flag protocol both processes can enter together
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("naive.mdl");
    std::fs::write(
        &path,
        "process A { loc n init\n loc c\n edge n -> c\n edge c -> n }\n\
         process B { loc n init\n loc c\n edge n -> c\n edge c -> n }\n",
    )
    .unwrap();
    let o = apr(&[
        "safety",
        "--model",
        path.to_str().unwrap(),
        "--from",
        "init",
        "--error",
        "loc(A)=c && loc(B)=c",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("unsafe"));
    assert!(out.contains("witness: <n,n> -> "), "{out}");
}

#[test]
fn json_report_round_trips() {
    let o = apr(&[
        "liveness",
        "--builtin",
        "peterson",
        "--from",
        WAITING,
        "--goal",
        "loc(P0)=crit0",
        "--json",
    ]);
    let text = stdout(&o);
    let r = RunReport::from_json(&text).unwrap();
    assert!(r.holds);
    assert_eq!(r.verdict, "TotallyValid");
    assert!(r.stats.unwrap().acyclic);
    assert_eq!(RunReport::from_json(&r.to_json()).unwrap(), r);
}

#[test]
fn emit_proof_and_export() {
    let dir = tempfile::tempdir().unwrap();
    let a1 = fixture("a1.ars");
    let dot = dir.path().join("a1.dot");
    let o = apr(&[
        "check",
        "--ars",
        &a1,
        "--source",
        "a",
        "--target",
        "c,d",
        "--emit-proof",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(written.matches("[label=\"{").count(), 5);
    assert!(written.contains("v2 -> v0 [label=\"Der\"]"));

    let trace = dir.path().join("a1.txt");
    let o = apr(&[
        "export",
        "--ars",
        &a1,
        "--source",
        "a",
        "--target",
        "c,d",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), written);
    assert!(std::fs::read_to_string(&trace)
        .unwrap()
        .contains("[bud of 0]"));

    let o = apr(&["export", "--ars", &a1, "--source", "", "--target", "c"]);
    assert_eq!(
        stdout(&o),
        "digraph proof {\n  v0 [label=\"{} => {c}\"];\n}\n"
    );
}

#[test]
fn expand_writes_a_loadable_ars() {
    let o = apr(&["expand", "--builtin", "peterson"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# initial: <noncrit0,noncrit1,false,false,0>,"));
    let ars = parse_ars(&text).unwrap();
    assert_eq!(ars.len(), 72);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.ars");
    apr(&[
        "expand",
        "--model",
        &fixture("peterson.mdl"),
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);

    // the label list syntax accepts expanded labels
    let o = apr(&[
        "check",
        "--ars",
        path.to_str().unwrap(),
        "--source",
        "<noncrit0,noncrit1,false,false,0>,<noncrit0,noncrit1,false,false,1>",
        "--target",
        "",
        "--mode",
        "partial",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_exit_with_two() {
    let a1 = fixture("a1.ars");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ars");
    std::fs::write(&bad, "states a\ntrans a b\n").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["check", "--ars", &a1, "--source", "a", "--target", "zz"],
        vec![
            "check",
            "--ars",
            "/nonexistent/a1.ars",
            "--source",
            "a",
            "--target",
            "c",
        ],
        vec![
            "check",
            "--ars",
            bad.to_str().unwrap(),
            "--source",
            "a",
            "--target",
            "a",
        ],
        vec!["check", "--source", "a", "--target", "c"],
        vec![
            "check",
            "--builtin",
            "peterson",
            "--source",
            "loc(P0)=",
            "--target",
            "true",
        ],
        vec![
            "check",
            "--builtin",
            "peterson",
            "--source",
            "loc(P7)=x",
            "--target",
            "true",
        ],
        vec![
            "check",
            "--builtin",
            "peterson",
            "--max-states",
            "10",
            "--source",
            "init",
            "--target",
            "true",
        ],
        vec![
            "check",
            "--ars",
            &a1,
            "--source",
            "a",
            "--target",
            "c",
            "--max-nodes",
            "1",
        ],
        vec![
            "check",
            "--ars",
            &a1,
            "--source",
            "a",
            "--target",
            "c",
            "--engine",
            "oracle",
            "--emit-proof",
            "x.dot",
        ],
        vec![
            "check",
            "--ars",
            &a1,
            "--source",
            "a",
            "--target",
            "c",
            "--emit-proof",
            "/nonexistent/dir/x.dot",
        ],
    ];
    for args in cases {
        let o = apr(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = apr(&[
        "check",
        "--ars",
        bad.to_str().unwrap(),
        "--source",
        "a",
        "--target",
        "a",
    ]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 9"));
}
