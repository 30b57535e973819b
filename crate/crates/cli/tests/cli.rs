use std::io::Write;
use std::process::{Command, Output, Stdio};

fn locdim(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_locdim"))
        .args(args)
        .env_remove("LOCDIM_EXACT_LIMIT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const K4_PENDANT: &str = "5\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n0 4\n";

#[test]
fn construct_k4_pendant_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(K4_PENDANT.as_bytes()).unwrap();
    let o = locdim(&["construct", f.path().to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("|S| = 3, floor(2n/3) = 3"), "{out}");
    assert!(out.contains("certificate: valid"));
    assert!(out.contains("3.3"));
}

#[test]
fn construct_json_trace() {
    let o = locdim(&["--json", "construct"], K4_PENDANT);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["size"], 3);
    assert_eq!(v["valid"], true);
    assert_eq!(v["trace"]["steps"][0]["case"], "3.3");
}

#[test]
fn construct_cycle_and_domain_errors() {
    let o = locdim(&["construct"], "4\n0 1\n1 2\n2 3\n3 0\n");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("|S| = 2"));

    let k6 = stdout(&locdim(&["gen", "complete", "--n", "6"], ""));
    let o = locdim(&["construct"], &k6);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("conjecture"));

    let o = locdim(&["construct"], "4\n0 1\n2 3\n");
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn parse_and_size_errors() {
    assert_eq!(locdim(&["exact"], "not-a-graph").status.code(), Some(64));
    assert_eq!(locdim(&["exact"], "2\n0 0\n").status.code(), Some(64));
    let p20 = stdout(&locdim(&["gen", "path", "--n", "20"], ""));
    assert_eq!(locdim(&["exact"], &p20).status.code(), Some(66));
    assert_eq!(
        locdim(&["--limit", "20", "exact"], &p20).status.code(),
        Some(0)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_locdim"))
        .args(["exact", "-"])
        .env("LOCDIM_EXACT_LIMIT", "4")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(b"C~")?;
            c.wait_with_output()
        })
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn exact_verify_bounds_decompose() {
    let k5 = stdout(&locdim(&["gen", "complete", "--n", "5"], ""));
    let o = locdim(&["exact"], &k5);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("4"));

    let c6 = stdout(&locdim(&["gen", "cycle", "--n", "6"], ""));
    let o = locdim(&["verify", "--set", "0"], &c6);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("certificate valid"));
    let o = locdim(&["verify", "--set", "0,1"], &k5);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        locdim(&["verify", "--set", "9"], &k5).status.code(),
        Some(64)
    );

    let o = locdim(&["--json", "bounds"], &c6);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        (v["bipartite"].clone(), v["implied"].clone()),
        (true.into(), 1.into())
    );

    let k5e = stdout(&locdim(&["gen", "complete-minus-edge", "--n", "5"], ""));
    let o = locdim(&["decompose"], &k5e);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["H1"].as_array().unwrap().len(), 1);
    for k in ["H2", "H3", "H4", "H5", "H6", "H7"] {
        assert!(v[k].as_array().unwrap().is_empty());
    }
}

#[test]
fn gen_seeds_advance() {
    let three = stdout(&locdim(
        &["--seed", "5", "gen", "random", "--n", "8", "--count", "3"],
        "",
    ));
    let lines: Vec<&str> = three.lines().collect();
    assert_eq!(lines.len(), 3);
    let second = stdout(&locdim(&["--seed", "6", "gen", "random", "--n", "8"], ""));
    assert_eq!(second.trim(), lines[1]);
    assert_eq!(
        stdout(&locdim(&["gen", "extremal", "--t", "2"], ""))
            .trim()
            .len(),
        5
    );
    assert_eq!(locdim(&["gen", "extremal"], "").status.code(), Some(64));
}

#[test]
fn sweep_is_deterministic() {
    let args = [
        "--deterministic-output",
        "sweep",
        "--n-min",
        "5",
        "--n-max",
        "7",
        "--count",
        "10",
        "--exact",
    ];
    let a = locdim(&args, "");
    let b = locdim(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("graph6,n,m,omega,construct_size,bound,exact,valid,lb_log,lb_gap,case_histogram")
    );
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 31);
    assert!(text.lines().last().unwrap().contains("violations=0"));

    let timed = stdout(&locdim(
        &["sweep", "--n-min", "5", "--n-max", "5", "--count", "2"],
        "",
    ));
    assert!(timed
        .lines()
        .next()
        .unwrap()
        .ends_with(",construct_us,exact_us"));
}

#[test]
fn sweep_marks_skips_and_checks_limit() {
    let o = locdim(
        &[
            "sweep",
            "--n-min",
            "5",
            "--n-max",
            "5",
            "--count",
            "2",
            "--omega",
            "2",
            "--p",
            "0.99",
            "--max-tries",
            "2",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("# skipped")).count(),
        2
    );
    assert!(text.contains("skipped=2"));

    let o = locdim(&["sweep", "--n-min", "5", "--n-max", "20", "--exact"], "");
    assert_eq!(o.status.code(), Some(66));
}
