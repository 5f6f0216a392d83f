use std::path::Path;
use std::process::{Command, Output};

use bon_experiments::{parse_mc_var_csv, parse_sweep_csv};

fn bon(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bon"))
        .args(args)
        .current_dir(dir)
        .env_remove("BON_SEED")
        .output()
        .expect("spawn bon")
}

fn error_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "stderr: {text}");
    serde_json::from_str(text.trim()).unwrap()
}

#[test]
fn pmf_example1() {
    let dir = tempfile::tempdir().unwrap();
    let out = bon(&["pmf", "--builtin", "example1", "--n", "3"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "outcome_id,reward,base_prob,bon_prob");
    assert!(lines[1].ends_with(",1.2500000000000003e-1") || lines[1].ends_with(",1.2500000000000000e-1"));
    assert!(lines[2].ends_with(",8.7500000000000000e-1"));
}

#[test]
fn pmf_from_file_with_jitter() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("d.tsv"), "outcome_id\treward\tprob\na\t1\t0.5\nb\t1\t0.5\n").unwrap();
    let plain = bon(&["pmf", "--dist", "d.tsv", "--n", "2"], dir.path());
    assert_eq!(plain.status.code(), Some(2));
    assert_eq!(error_json(&plain)["error"], "input");
    let jittered = bon(&["pmf", "--dist", "d.tsv", "--n", "2", "--jitter", "1e-9", "--seed", "1"], dir.path());
    assert!(jittered.status.success());
}

#[test]
fn report_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = bon(&["report", "--builtin", "uniform:4", "--n", "2"], dir.path());
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["exact_kl"].as_f64().unwrap() - 0.173_980_480_852_735_9).abs() < 1e-12);
    assert_eq!(v["expected_reward"].as_f64().unwrap(), 2.125);
    assert_eq!(v["n"], 2);
}

#[test]
fn sweep_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = bon(
        &["sweep", "--builtin", "example1", "--n-grid", "1:30:log30", "--mc-samples", "1000", "--out", "s.csv", "--svg", "s.svg"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = parse_sweep_csv(&std::fs::read_to_string(dir.path().join("s.csv")).unwrap()).unwrap();
    assert_eq!(rows.last().unwrap().report.n, 30);
    assert!(rows.iter().all(|r| r.mc_tv.is_some()));
    let svg = std::fs::read_to_string(dir.path().join("s.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 4);
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["sweep", "--builtin", "cherry_left", "--n-grid", "10", "--mc-samples", "5000", "--out"];
    let run = |out: &str, env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_bon"));
        cmd.args(args).arg(out).current_dir(dir.path()).env_remove("BON_SEED");
        if let Some(s) = env {
            cmd.env("BON_SEED", s);
        }
        assert!(cmd.status().unwrap().success());
        std::fs::read(dir.path().join(out)).unwrap()
    };
    let a = run("a.csv", Some("77"));
    let b = run("b.csv", Some("77"));
    let c = run("c.csv", None);
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn mc_var_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = bon(
        &["mc-var", "--builtin", "uniform:8", "--n-grid", "1,3,30", "--mc-samples", "100", "--out", "m.csv"],
        dir.path(),
    );
    assert!(out.status.success());
    let rows = parse_mc_var_csv(&std::fs::read_to_string(dir.path().join("m.csv")).unwrap()).unwrap();
    assert!(rows.iter().all(|r| r.proposed_sd == 0.0 && r.alt_sd == 0.0));

    let one = bon(&["mc-var", "--builtin", "uniform:8", "--n-grid", "3", "--mc-samples", "1", "--out", "m.csv"], dir.path());
    assert_eq!(one.status.code(), Some(2));
    assert_eq!(error_json(&one)["error"], "config");
}

#[test]
fn reproduce_writes_named_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = bon(&["reproduce", "--figure", "2", "--L", "100", "--out-dir", "figs", "--points", "20"], dir.path());
    assert!(out.status.success());
    for f in ["fig2_uniform_100.csv", "fig2_uniform_100.svg"] {
        assert!(dir.path().join("figs").join(f).is_file(), "{f}");
    }
    let bad = bon(&["reproduce", "--figure", "1", "--L", "10", "--out-dir", "figs"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [(&[&str], i32, &str); 6] = [
        (&["pmf", "--n", "3"], 2, "config"),
        (&["pmf", "--builtin", "nope", "--n", "3"], 2, "config"),
        (&["sweep", "--builtin", "example1", "--n-grid", "5,2", "--out", "x.csv"], 2, "config"),
        (&["pmf", "--dist", "missing.tsv", "--n", "3"], 2, "io"),
        (&["report", "--builtin", "example1", "--n", "0"], 3, "math"),
        (&["reproduce", "--figure", "7", "--out-dir", "x"], 2, "config"),
    ];
    for (args, code, kind) in cases {
        let out = bon(args, dir.path());
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        assert_eq!(error_json(&out)["error"], kind, "{args:?}");
    }
    std::fs::write(dir.path().join("bad.tsv"), "outcome_id\treward\tprob\na\t1\n").unwrap();
    let out = bon(&["pmf", "--dist", "bad.tsv", "--n", "3"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(error_json(&out)["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn help_and_version_succeed() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["--help"][..], &["--version"], &["sweep", "--help"]] {
        let out = bon(args, dir.path());
        assert!(out.status.success());
        assert!(!out.stdout.is_empty());
    }
}
