use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use ryserlab_cli::{run, Invocation};
use serde_json::Value;

fn cli(args: &[&str]) -> Invocation {
    run(std::iter::once("ryserlab").chain(args.iter().copied()))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("ryserlab-cli-{}-{name}", std::process::id()));
    std::fs::File::create(&path)
        .and_then(|mut f| f.write_all(contents.as_bytes()))
        .unwrap();
    path
}

fn records(stdout: &str) -> Vec<Value> {
    stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn output<'a>(recs: &'a [Value], key: &str) -> &'a Value {
    recs.iter()
        .find(|r| r["record"] == "output" && r["key"] == key)
        .map(|r| &r["value"])
        .unwrap_or_else(|| panic!("no output {key}"))
}

#[test]
fn parker_transversals() {
    let run = cli(&["transversals", "count", "--data", "parker"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout.trim(), "count: 5504");
    let swapped = cli(&[
        "--format",
        "records",
        "transversals",
        "count",
        "--data",
        "parker-swapped",
    ]);
    assert_eq!(swapped.code, 0);
    assert_eq!(output(&records(&swapped.stdout), "count"), 0);
}

#[test]
fn counterexample_values() {
    let run = cli(&["--format", "records", "perm", "counterexamples"]);
    assert_eq!(run.code, 0);
    let recs = records(&run.stdout);
    assert_eq!(output(&recs, "jurkat_per_a"), "119/432");
    assert_eq!(output(&recs, "jurkat_per_b"), "1/2");
    assert_eq!(output(&recs, "jurkat_per_ab"), "5/18");
    assert_eq!(output(&recs, "newman_per_a"), "1/8");
    assert_eq!(output(&recs, "newman_per_aat"), "9/64");
    let verdicts: Vec<_> = recs.iter().filter(|r| r["record"] == "verdict").collect();
    assert_eq!(verdicts.len(), 2);
    assert!(verdicts.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn malformed_input_exits_2() {
    let bad = temp_file("bad-square", "0 1 2\n1 1 0\n2 0 1\n");
    let run = cli(&["transversals", "count", bad.to_str().unwrap()]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("repeats"), "{}", run.stderr);
    let headerless = temp_file("headerless", "1 1\n0 1\n");
    assert_eq!(cli(&["match", headerless.to_str().unwrap()]).code, 2);
    assert_eq!(cli(&["match", "/nonexistent/ryserlab"]).code, 2);
    assert_eq!(cli(&["count", "squares"]).code, 2);
    assert_eq!(cli(&["--threads", "0", "perm", "counterexamples"]).code, 2);
}

#[test]
fn failed_plane_check_exits_1() {
    let built = cli(&["plane", "build", "--p", "2", "--a", "1"]);
    assert_eq!(built.code, 0);
    let mut lines: Vec<String> = built
        .stdout
        .lines()
        .skip_while(|l| !l.starts_with("incidence"))
        .skip(1)
        .take(8)
        .map(|l| l.trim().to_string())
        .collect();
    assert_eq!(lines[0], "7 7");
    let good = temp_file("fano", &(lines.join("\n") + "\n"));
    assert_eq!(
        cli(&["plane", "verify", "--order", "2", good.to_str().unwrap()]).code,
        0
    );
    let row = &mut lines[1];
    let flipped = if row.starts_with('1') { "0" } else { "1" };
    row.replace_range(0..1, flipped);
    let bad = temp_file("fano-flipped", &(lines.join("\n") + "\n"));
    let run = cli(&["plane", "verify", "--order", "2", bad.to_str().unwrap()]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("[FAIL]"), "{}", run.stdout);
}

fn without_timing(stdout: &str) -> Vec<Value> {
    let mut recs = records(stdout);
    for r in &mut recs {
        if let Some(obj) = r.as_object_mut() {
            obj.remove("timing_ms");
        }
    }
    recs
}

#[test]
fn records_repeat_across_runs_and_threads() {
    let args = [
        "--format",
        "records",
        "transversals",
        "parity",
        "--data",
        "parker",
    ];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(without_timing(&a.stdout), without_timing(&b.stdout));
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .filter(|l| !l.contains("\"record\":\"report\""))
            .map(String::from)
            .collect()
    };
    assert_eq!(strip(&a.stdout), strip(&b.stdout));
    let mut threaded = vec!["--threads", "2"];
    threaded.extend(args);
    let c = cli(&threaded);
    assert_eq!(without_timing(&a.stdout), without_timing(&c.stdout));
}

#[test]
fn digest_tracks_input() {
    let digest = |args: &[&str]| {
        let recs = records(&cli(args).stdout);
        recs.last().unwrap()["inputs_digest"].clone()
    };
    let parker = [
        "--format",
        "records",
        "transversals",
        "count",
        "--data",
        "parker",
    ];
    let swapped = [
        "--format",
        "records",
        "transversals",
        "count",
        "--data",
        "parker-swapped",
    ];
    assert_eq!(digest(&parker), digest(&parker));
    assert_ne!(digest(&parker), digest(&swapped));
}

#[test]
fn counts_and_constructions() {
    let recs = |args: &[&str]| {
        let mut full = vec!["--format", "records"];
        full.extend(args);
        let run = cli(&full);
        assert_eq!(run.code, 0, "{args:?}: {}", run.stderr);
        records(&run.stdout)
    };
    assert_eq!(
        output(&recs(&["count", "squares", "--n", "5"]), "reduced_squares"),
        56
    );
    let rect = recs(&[
        "count",
        "rectangles",
        "--r",
        "2",
        "--n",
        "4",
        "--normalized",
    ]);
    assert_eq!(output(&rect, "rectangles"), "9");
    let ident = recs(&["perm", "identity", "--n", "6", "--x", "2", "--y", "-1/3"]);
    assert_eq!(output(&ident, "derangements"), "265");
    let mols = recs(&["mols", "macneish", "--n", "12"]);
    assert_eq!(output(&mols, "squares"), 2);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(cli(&["--help"]).code, 0);
    assert!(cli(&["--help"]).stdout.contains("transversals"));
    assert_eq!(cli(&["--version"]).code, 0);
}

#[test]
fn binary_uses_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ryserlab");
    let ok = Command::new(bin)
        .args(["transversals", "count", "--data", "parker"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "count: 5504");
    let bad = Command::new(bin)
        .args(["match", "/nonexistent/ryserlab"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}

#[test]
fn written_files_feed_later_commands() {
    let dir = std::env::temp_dir();
    let sys = dir.join(format!("ryserlab-cli-{}-sys5.txt", std::process::id()));
    let plane = dir.join(format!("ryserlab-cli-{}-plane5.txt", std::process::id()));
    let (sys, plane) = (sys.to_str().unwrap(), plane.to_str().unwrap());
    assert_eq!(
        cli(&["mols", "gf", "--p", "5", "--a", "1", "--out", sys]).code,
        0
    );
    assert_eq!(
        cli(&["plane", "build", "--system", sys, "--out", plane]).code,
        0
    );
    let verify = cli(&["plane", "verify", "--order", "5", plane]);
    assert_eq!(verify.code, 0);
    assert!(verify.stdout.contains("is_plane: true"));
    let extracted = cli(&["plane", "extract", "--order", "5", plane]);
    assert_eq!(extracted.code, 0);
    assert!(
        extracted.stdout.contains("squares: 4"),
        "{}",
        extracted.stdout
    );
}
