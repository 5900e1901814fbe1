use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wspectral"));
    for var in ["WSPECTRAL_SEED", "WSPECTRAL_STRICT", "WSPECTRAL_THREADS", "WSPECTRAL_OUT", "WSPECTRAL_EDGES"] {
        cmd.env_remove(var);
    }
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "failed with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Data rows of a TSV keyed by their first column.
fn rows(text: &str) -> HashMap<String, Vec<f64>> {
    text.lines()
        .skip(1)
        .map(|l| {
            let mut f = l.split('\t');
            let key = f.next().unwrap().to_string();
            (key, f.map(|x| x.parse().unwrap()).collect())
        })
        .collect()
}

const TRIANGLE: &str = "a b\nb c\na c\n";
const PATH3: &str = "0 1\n1 2\n";
const TWO_TRIANGLES: &str = "0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3\n";

#[test]
fn regular_embedding_of_an_edge() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.tsv", "u v\n");
    let out = stdout(&run(&["embed", "--edges", s(&edges), "--mode", "regular", "--k", "1", "--seed", "1", "--stdout"]));
    let r = rows(&out);
    assert!(out.starts_with("node\tx1\n"));
    assert!((r["u"][0].abs() - 0.5).abs() < 1e-12);
    assert!((r["u"][0] + r["v"][0]).abs() < 1e-12);
}

#[test]
fn embedding_modes_default_to_internal_weights() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.tsv", TWO_TRIANGLES);
    for mode in ["weighted", "shifted"] {
        let implicit = stdout(&run(&["embed", "--edges", s(&edges), "--mode", mode, "--k", "3", "--seed", "2", "--stdout"]));
        let explicit = stdout(&run(&[
            "embed", "--edges", s(&edges), "--mode", mode, "--weights", "internal", "--k", "3", "--seed", "2", "--stdout",
        ]));
        assert_eq!(implicit, explicit, "{mode}");
    }
    let prefix = dir.path().join("e");
    stdout(&run(&["embed", "--edges", s(&edges), "--mode", "shifted", "--k", "2", "--seed", "2", "--out", s(&prefix)]));
    let sidecar: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("e.json")).unwrap()).unwrap();
    assert_eq!(sidecar["config"]["graph"]["weights"], "internal");
    assert_eq!(sidecar["result"]["mode"], "shifted");
    assert!(sidecar.get("timings_seconds").is_none());
}

#[test]
fn regular_mode_rejects_node_weights() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.tsv", TRIANGLE);
    let out = run(&["embed", "--edges", s(&edges), "--mode", "regular", "--weights", "internal", "--k", "1", "--seed", "1", "--stdout"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.tsv", TWO_TRIANGLES);
    let mut outputs = Vec::new();
    for (tag, threads) in [("a", "1"), ("b", "2"), ("c", "1")] {
        let prefix = dir.path().join(tag);
        stdout(&run(&[
            "cluster", "--edges", s(&edges), "--k", "3", "--clusters", "2", "--restarts", "20", "--seed", "9",
            "--threads", threads, "--out", s(&prefix),
        ]));
        let read = |suffix: &str| fs::read(dir.path().join(format!("{tag}{suffix}"))).unwrap();
        outputs.push((read(".tsv"), read(".summary.json"), read(".json")));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn two_triangles_cluster_into_triangles() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.tsv", TWO_TRIANGLES);
    let prefix = dir.path().join("c");
    stdout(&run(&["cluster", "--edges", s(&edges), "--k", "2", "--clusters", "2", "--seed", "4", "--out", s(&prefix)]));
    let tsv = fs::read_to_string(dir.path().join("c.tsv")).unwrap();
    let ids: HashMap<&str, &str> = tsv.lines().skip(1).map(|l| l.split_once('\t').unwrap()).collect();
    assert_eq!(ids["0"], ids["1"]);
    assert_eq!(ids["1"], ids["2"]);
    assert_eq!(ids["3"], ids["4"]);
    assert_eq!(ids["4"], ids["5"]);
    assert_ne!(ids["0"], ids["5"]);
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("c.summary.json")).unwrap()).unwrap();
    assert_eq!(summary.as_array().unwrap().len(), 2);
    assert_eq!(summary[0]["size"], 3);
}

#[test]
fn boost_subset_changes_the_weights() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.tsv", TWO_TRIANGLES);
    let people = write(&dir, "people.txt", "# boosted\n0\n4\n");
    let base = stdout(&run(&["embed", "--edges", s(&edges), "--k", "2", "--seed", "1", "--stdout"]));
    let boosted = stdout(&run(&[
        "embed", "--edges", s(&edges), "--k", "2", "--seed", "1", "--boost-subset", s(&people), "--boost-factor", "10",
        "--stdout",
    ]));
    assert_ne!(base, boosted);
    let bad = write(&dir, "bad.txt", "nobody\n");
    let out = run(&["embed", "--edges", s(&edges), "--k", "2", "--seed", "1", "--boost-subset", s(&bad), "--stdout"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nobody"));
}

#[test]
fn walk_pair_statistics() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "t.tsv", TRIANGLE);
    let out = stdout(&run(&["walk", "--edges", s(&tri), "--pair", "a,b", "--pair", "a,a", "--stdout"]));
    let lines: Vec<Vec<&str>> = out.lines().map(|l| l.split('\t').collect()).collect();
    assert_eq!(lines[0], ["i", "j", "H_ij", "H_ji", "C_ij", "S_ij"]);
    let num = |x: &str| x.parse::<f64>().unwrap();
    assert!((num(lines[1][2]) - 1.0).abs() < 1e-12);
    assert!((num(lines[1][4]) - 2.0).abs() < 1e-12);
    assert_eq!(&lines[2][2..], ["0", "0", "0", "1"]);

    let path = write(&dir, "p.tsv", PATH3);
    let out = stdout(&run(&["walk", "--edges", s(&path), "--pair", "0,2", "--stdout"]));
    let v: Vec<f64> = out.lines().nth(1).unwrap().split('\t').skip(2).map(num).collect();
    assert!((v[0] - 3.0).abs() < 1e-12 && (v[1] - 3.0).abs() < 1e-12 && (v[2] - 6.0).abs() < 1e-12);
}

#[test]
fn unknown_labels_exit_with_code_2() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "t.tsv", TRIANGLE);
    let out = run(&["walk", "--edges", s(&tri), "--pair", "a,zz", "--stdout"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("'zz'"));
    assert!(out.stdout.is_empty());
}

#[test]
fn dirichlet_outputs_and_consistency_with_walk() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "p.tsv", PATH3);
    let prefix = dir.path().join("d");
    stdout(&run(&["dirichlet", "--edges", s(&path), "--pair", "0,2", "--out", s(&prefix)]));
    let pots = rows(&fs::read_to_string(dir.path().join("d.tsv")).unwrap());
    for (node, want) in [("0", 1.0), ("1", 0.5), ("2", 0.0)] {
        assert!((pots[node][0] - want).abs() < 1e-12);
    }
    let j: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("d.json")).unwrap()).unwrap();
    assert!((j["alpha"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    let edge = write(&dir, "e.tsv", "0 1\n");
    stdout(&run(&["dirichlet", "--edges", s(&edge), "--pair", "0,1", "--out", s(&prefix)]));
    let j: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("d.json")).unwrap()).unwrap();
    assert!((j["alpha"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let g = write(&dir, "g.tsv", TWO_TRIANGLES);
    let w = write(&dir, "w.tsv", "0 3\n1 0.5\n2 2\n3 1\n4 7\n5 0.25\n");
    let weights = ["--weights", "file", "--weights-file", s(&w)];
    let mut args = vec!["dirichlet", "--edges", s(&g), "--pair", "1,4", "--out", s(&prefix)];
    args.extend(weights);
    stdout(&run(&args));
    let j: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("d.json")).unwrap()).unwrap();
    let mut args = vec!["walk", "--edges", s(&g), "--pair", "1,4", "--stdout"];
    args.extend(weights);
    let out = stdout(&run(&args));
    let v: Vec<f64> = out.lines().nth(1).unwrap().split('\t').skip(2).map(|x| x.parse().unwrap()).collect();
    for (key, walk) in [("H_ij", v[0]), ("H_ji", v[1]), ("C_ij", v[2])] {
        let d = j[key].as_f64().unwrap();
        assert!((d - walk).abs() <= 1e-8 * walk.abs(), "{key}: {d} vs {walk}");
    }
}

#[test]
fn simulate_checks_trials_and_agrees_with_exact_value() {
    let dir = TempDir::new().unwrap();
    let edge = write(&dir, "e.tsv", "0 1\n");
    let w = write(&dir, "w.tsv", "0 4\n1 1\n");
    let base = ["simulate", "--edges", s(&edge), "--weights", "file", "--weights-file", s(&w), "--seed", "3", "--stdout"];
    let mut args = base.to_vec();
    args.extend(["--pair", "0,1", "--trials", "0"]);
    assert_eq!(run(&args).status.code(), Some(2));

    let mut args = base.to_vec();
    args.extend(["--pair", "0,1", "--trials", "100000"]);
    let j: serde_json::Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
    let (mean, se) = (j["mean"].as_f64().unwrap(), j["stderr"].as_f64().unwrap());
    assert!((mean - 4.0).abs() <= 4.0 * se, "{mean} +- {se}");
    assert_eq!(j["seed"], 3);
    assert_eq!(j["trials"], 100000);

    let mut args = base.to_vec();
    args.extend(["--pair", "1,1", "--trials", "10"]);
    let j: serde_json::Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
    assert_eq!(j["mean"], 0.0);
}

#[test]
fn solver_failure_exits_with_code_3() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.tsv", TWO_TRIANGLES);
    // no solver reaches a residual of 1e-300
    let out = run(&["embed", "--edges", s(&edges), "--k", "2", "--tol", "1e-300", "--seed", "1", "--stdout"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn strict_mode_requires_a_seed() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.tsv", TRIANGLE);
    let out = run(&["embed", "--strict", "--edges", s(&edges), "--k", "1", "--stdout"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["embed", "--edges", s(&edges), "--k", "1", "--stdout"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("using"));
}

#[test]
fn environment_overrides_flags() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.tsv", TWO_TRIANGLES);
    let flag = stdout(&run(&["embed", "--edges", s(&edges), "--k", "2", "--seed", "5", "--stdout"]));
    let env = bin()
        .args(["embed", "--k", "2", "--stdout"])
        .env("WSPECTRAL_SEED", "5")
        .env("WSPECTRAL_EDGES", s(&edges))
        .output()
        .unwrap();
    assert_eq!(flag, stdout(&env));
}

#[test]
fn largest_component_matches_manual_extraction() {
    let dir = TempDir::new().unwrap();
    let full = write(&dir, "full.tsv", "x y\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n2 3\n");
    let out = run(&["embed", "--edges", s(&full), "--k", "2", "--seed", "1", "--stdout"]);
    assert_eq!(out.status.code(), Some(2));
    let lcc = stdout(&run(&["embed", "--edges", s(&full), "--lcc", "--k", "2", "--seed", "1", "--stdout"]));
    let manual = write(&dir, "manual.tsv", TWO_TRIANGLES);
    let direct = stdout(&run(&["embed", "--edges", s(&manual), "--k", "2", "--seed", "1", "--stdout"]));
    let (a, b) = (rows(&lcc), rows(&direct));
    assert_eq!(a.len(), 6);
    for (label, coords) in &b {
        for (x, y) in coords.iter().zip(&a[label]) {
            assert!((x - y).abs() < 1e-10, "{label}");
        }
    }
}

#[test]
fn fixtures_and_missing_destination() {
    let out = stdout(&run(&["fixture", "cycle", "--n", "4", "--stdout"]));
    assert_eq!(out.lines().count(), 4);
    assert_eq!(run(&["fixture", "cycle", "--n", "2", "--stdout"]).status.code(), Some(2));
    assert_eq!(run(&["fixture", "path"]).status.code(), Some(2));
}

#[test]
fn timings_only_when_requested() {
    let dir = TempDir::new().unwrap();
    let edges = write(&dir, "g.tsv", TRIANGLE);
    let prefix = dir.path().join("t");
    stdout(&run(&["embed", "--edges", s(&edges), "--k", "1", "--seed", "1", "--timings", "--out", s(&prefix)]));
    let j: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("t.json")).unwrap()).unwrap();
    assert!(j["timings_seconds"]["embed"].as_f64().is_some());
}
