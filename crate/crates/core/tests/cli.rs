use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn spbcast(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spbcast")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn gen(dir: &Path, family: &str, k: u32, extra: &[&str]) -> PathBuf {
    let path = dir.join(format!("{family}{k}.json"));
    let ks = k.to_string();
    let mut args = vec!["gen", family, "--k", &ks, "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = spbcast(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn negative(name: &str) -> String {
    format!("{}/tests/corpus/negative/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn gen_dot_file() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("mb4.dot");
    let out = spbcast(&["gen", "mb", "--k", "4", "--format", "dot", "--out", dot.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("graph G {"));
    assert_eq!(text.matches(" -- ").count(), 16 + 2);
}

#[test]
fn btime_exact_mb3() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "mb", 3, &[]);
    let out = spbcast(&["btime", g.to_str().unwrap(), "--exact"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "4");

    let witness = dir.path().join("w.csv");
    let out =
        spbcast(&["btime", g.to_str().unwrap(), "--exact", "--origin", "0", "--witness", witness.to_str().unwrap()]);
    assert_eq!(stdout(&out).trim(), "4");
    let out = spbcast(&["validate", g.to_str().unwrap(), witness.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("4 rounds"));
}

#[test]
fn btime_over_cap_is_invalid_input() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "mb", 6, &[]);
    assert_eq!(code(&spbcast(&["btime", g.to_str().unwrap(), "--exact"])), 2);
    assert_eq!(code(&spbcast(&["btime", g.to_str().unwrap(), "--exact", "--cap", "65"])), 2);
    // the scheme upper bound has no cap
    let out = spbcast(&["btime", g.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "9");
}

#[test]
fn verify_ab2_sp_reports_kernel() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "ab", 2, &[]);
    let out = spbcast(&["verify", g.to_str().unwrap(), "--checks", "sp"]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["verdict"], "fail");
    assert_eq!(report["witness"]["kind"], "kernel");
    assert!(!report["witness"]["edges"].as_array().unwrap().is_empty());
}

#[test]
fn verify_full_check_list_passes_on_families() {
    let dir = TempDir::new().unwrap();
    for (family, k) in [("mb", 4), ("eb", 4), ("b", 3), ("rb", 3)] {
        let g = gen(dir.path(), family, k, &[]);
        let out = spbcast(&["verify", g.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{family}{k}: {}", stdout(&out));
        assert!(stdout(&out).lines().count() >= 6);
    }
    // PB_4 is planar but not SP: the literal sp assertion fails
    let g = gen(dir.path(), "pb", 4, &[]);
    let checks = "planar,biconnected,degrees,distances,scheme,exact";
    assert_eq!(code(&spbcast(&["verify", g.to_str().unwrap(), "--checks", checks])), 0);
    assert_eq!(code(&spbcast(&["verify", g.to_str().unwrap(), "--checks", "sp"])), 1);
}

#[test]
fn every_scheme_schedule_validates() {
    let dir = TempDir::new().unwrap();
    for (family, k, scheme) in [
        ("bt", 4, "binomial"),
        ("mb", 5, "mb"),
        ("b", 4, "composed"),
        ("eb", 6, "composed"),
        ("pb", 6, "composed"),
        ("ab", 4, "ab"),
        ("rb", 4, "relaxed"),
        ("k3sp", 12, "greedy"),
    ] {
        let g = gen(dir.path(), family, k, &[]);
        let n: usize = serde_json::from_str::<serde_json::Value>(&fs::read_to_string(&g).unwrap()).unwrap()["n"]
            .as_u64()
            .unwrap() as usize;
        for origin in [0, n / 2, n - 1] {
            let csv = dir.path().join("s.csv");
            let o = origin.to_string();
            let out = spbcast(&[
                "schedule",
                g.to_str().unwrap(),
                "--scheme",
                scheme,
                "--origin",
                &o,
                "--file",
                csv.to_str().unwrap(),
            ]);
            assert_eq!(code(&out), 0, "{family}{k} {scheme} from {origin}");
            let out = spbcast(&["validate", g.to_str().unwrap(), csv.to_str().unwrap(), "--origin", &o]);
            assert_eq!(code(&out), 0, "{family}{k} {scheme} from {origin}: {}", stdout(&out));
        }
    }
}

#[test]
fn schedule_json_output() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "mb", 3, &[]);
    let out = spbcast(&["schedule", g.to_str().unwrap(), "--scheme", "mb", "--origin", "2", "--out", "json"]);
    assert_eq!(code(&out), 0);
    let json = dir.path().join("s.json");
    fs::write(&json, stdout(&out)).unwrap();
    assert_eq!(code(&spbcast(&["validate", g.to_str().unwrap(), json.to_str().unwrap()])), 0);
}

#[test]
fn invalid_schedule_exits_1() {
    let dir = TempDir::new().unwrap();
    let g = gen(dir.path(), "mb", 3, &[]);
    let bad = dir.path().join("bad.csv");
    // vertex 2 is uninformed in round 1
    fs::write(&bad, "round,caller,callee\n1,0,1\n1,2,3\n").unwrap();
    let out = spbcast(&["validate", g.to_str().unwrap(), bad.to_str().unwrap(), "--origin", "0"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("caller_uninformed"));
    // incomplete
    fs::write(&bad, "round,caller,callee\n1,0,1\n").unwrap();
    assert_eq!(code(&spbcast(&["validate", g.to_str().unwrap(), bad.to_str().unwrap()])), 1);
}

#[test]
fn outputs_are_byte_deterministic() {
    let a = spbcast(&["gen", "k3sp", "--k", "30", "--seed", "9"]);
    let b = spbcast(&["gen", "k3sp", "--k", "30", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let c = spbcast(&["gen", "k3sp", "--k", "30", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
    let a = spbcast(&["table", "--families", "eb,ab", "--k", "2..5"]);
    let b = spbcast(&["table", "--families", "eb,ab", "--k", "2..5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

fn table(families: &str, k: &str) -> Vec<Vec<String>> {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("t.csv");
    let out = spbcast(&["table", "--families", families, "--k", k, "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,k,n,claimed_bound,scheme_rounds_worst,exact_rounds,sp,planar"));
    lines.map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn table_eb_within_k() {
    for row in table("eb", "2..6") {
        let k: usize = row[1].parse().unwrap();
        assert!(row[4].parse::<usize>().unwrap() <= k, "{row:?}");
    }
}

#[test]
fn table_bt_exact_column() {
    let rows = table("bt", "0..5");
    for row in &rows[..5] {
        let k: usize = row[1].parse().unwrap();
        assert_eq!(row[5], (2 * k).saturating_sub(1).to_string());
    }
    assert_eq!(rows[5][5], "scheme-only");
}

#[test]
fn table_pb_sizes() {
    for row in table("pb", "2..8") {
        let k: u32 = row[1].parse().unwrap();
        assert_eq!(row[2], ((1usize << (k - 1)) + (1usize << (3 * k / 4 - 1))).to_string());
        assert_eq!(row[7], "true");
    }
}

#[test]
fn negative_corpus_exits_2() {
    let dir = TempDir::new().unwrap();
    let good = gen(dir.path(), "mb", 3, &[]);
    let good = good.to_str().unwrap();
    for entry in fs::read_dir(negative("")).unwrap() {
        let path = entry.unwrap().path();
        let p = path.to_str().unwrap();
        let out = if p.ends_with(".json") {
            spbcast(&["verify", p, "--checks", "planar"])
        } else {
            spbcast(&["validate", good, p, "--origin", "0"])
        };
        assert_eq!(code(&out), 2, "{p}: {}", String::from_utf8_lossy(&out.stderr));
    }
    for args in [
        &["gen", "nope", "--k", "3"][..],
        &["gen", "pb", "--k", "1"],
        &["gen", "eb", "--k", "5", "--n", "99"],
        &["gen", "bt", "--k", "3", "--n", "8"],
        &["gen", "mb", "--k", "3", "--format", "svg"],
        &["table", "--families", "k3sp", "--k", "2..3"],
        &["table", "--families", "eb", "--k", "5..2"],
        &["schedule", good, "--scheme", "nope", "--origin", "0"],
        &["schedule", good, "--scheme", "mb", "--origin", "99"],
        &["schedule", good, "--scheme", "binomial", "--origin", "0"],
        &["verify", good, "--checks", "sp,bogus"],
        &["verify", good, "--terminals", "0,99"],
        &["btime", good, "--origin", "8"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&spbcast(args)), 2, "{args:?}");
    }
}
