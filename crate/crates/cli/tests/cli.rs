use std::io::Write;
use std::process::{Command, Output, Stdio};

fn kpath(args: &[&str], stdin: &str) -> Output {
    kpath_env(args, stdin, &[])
}

fn kpath_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kpath"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .env_remove("KPATH_BUDGET");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn cycle(n: usize) -> String {
    let mut s = format!("{n} {n}\n");
    for i in 0..n - 1 {
        s.push_str(&format!("{i} {}\n", i + 1));
    }
    s.push_str(&format!("0 {}\n", n - 1));
    s
}

#[test]
fn recognize_cycle() {
    let o = kpath(&["recognize", "--k", "3"], &cycle(9));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("member"));

    let o = kpath(&["recognize", "--k", "3"], &cycle(5));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solve_then_certify() {
    let dir = std::env::temp_dir().join(format!("kpath-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("c8.txt");
    std::fs::write(&graph, cycle(8)).unwrap();
    let cert = dir.join("c8.cert");
    let g = graph.to_str().unwrap();
    let c = cert.to_str().unwrap();

    let o = kpath(&["solve", "--k", "4", "--input", g, "--output", c], "");
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.starts_with("# dispatch: h4\n"), "{text}");
    assert!(text.ends_with("value: 2\n"));

    let o = kpath(&["certify", "--k", "4", "--input", g, "--certificate", c], "");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o), "valid: nu_4 = tau_4 = 2\n");

    std::fs::write(&cert, "matching:\n0 1 2 3\ncover:\n0\nvalue: 1\n").unwrap();
    let o = kpath(&["certify", "--k", "4", "--input", g, "--certificate", c], "");
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn solve_is_deterministic_and_reports_dispatch() {
    let a = kpath(&["solve", "--k", "2"], &cycle(5));
    let b = kpath(&["solve", "--k", "2"], &cycle(5));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    // C5 is not in G_2: the oracle decides and reports both values
    assert!(text.contains("# dispatch: oracle"), "{text}");
    assert!(text.contains("nu_k = 2, tau_k = 3"), "{text}");
    assert_eq!(a.status.code(), Some(1));

    let o = kpath(&["solve", "--k", "3", "--json"], &cycle(9));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["dispatch"], "h3");
    assert_eq!(v["nu"], 3);
}

#[test]
fn lp_values() {
    let o = kpath(&["lp", "--k", "2"], &cycle(5));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "nu*: 5/2\ntau*: 5/2\n");
}

#[test]
fn graph6_batch() {
    // C5 then K4: neither is in G_3
    let o = kpath(&["recognize", "--k", "3", "--format", "graph6"], "Dhc\nC~\n");
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.contains("non-member")));

    let o = kpath(&["lp", "--k", "2", "--format", "graph6"], "Dhc\nC~\n");
    assert_eq!(stdout(&o), "Dhc 5/2 5/2\nC~ 2 2\n");
}

#[test]
fn usage_and_format_errors() {
    assert_eq!(kpath(&["recognize", "--bogus"], "").status.code(), Some(2));
    assert_eq!(kpath(&["recognize"], &cycle(5)).status.code(), Some(2));
    assert_eq!(kpath(&["recognize", "--k", "3"], "3 1\n0 5\n").status.code(), Some(2));
    assert_eq!(
        kpath(&["recognize", "--k", "3", "--format", "graph6"], "C~\nC\n")
            .status
            .code(),
        Some(2)
    );
    assert_eq!(kpath(&["recognize", "--k", "6"], &cycle(6)).status.code(), Some(2));
}

#[test]
fn budget_exceeded() {
    let o = kpath_env(&["solve", "--k", "2"], &cycle(5), &[("KPATH_BUDGET", "paths=1")]);
    assert_eq!(o.status.code(), Some(3));
    let o = kpath_env(&["solve", "--k", "2"], &cycle(5), &[("KPATH_BUDGET", "nonsense")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn harness_commands() {
    let o = kpath(&["verify", "--check", "h3", "--n-max", "5", "--connected"], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("scanned: 31\n") && text.contains("mismatches: 0\n"),
        "{text}"
    );

    let a = kpath(
        &["conjecture", "subgraphs", "--k", "2", "--n-max", "5", "--threads", "1"],
        "",
    );
    let b = kpath(
        &["conjecture", "subgraphs", "--k", "2", "--n-max", "5", "--threads", "2"],
        "",
    );
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    // graphs read from a graph6 stream instead of the generator
    let o = kpath(
        &["verify", "--check", "h4", "--format", "graph6", "--input", "-"],
        "Dhc\nC~\n",
    );
    assert!(stdout(&o).contains("scanned: 2\n"));

    assert_eq!(
        kpath(&["verify", "--check", "h3", "--n-max", "11"], "").status.code(),
        Some(2)
    );
}

#[test]
fn tu_check_spider() {
    // three legs of three edges each
    let spider = "10 9\n0 1\n1 2\n2 3\n0 4\n4 5\n5 6\n0 7\n7 8\n8 9\n";
    let o = kpath(&["tu-check", "--k", "3"], spider);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("witness of order"), "{}", stdout(&o));
}
