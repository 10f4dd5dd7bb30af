use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn indexsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indexsim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = indexsim(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn indices_table() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "f.g6", ">>graph6<<Bg\nBw\n");
    let csv = ok(&["indices", &file, "--indices", "extended"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "label,harary,sombor,degree_distance,gutman,energy,estrada,first_zagreb,randic,resolvent_energy,wiener"
    );
    assert!(lines[1].starts_with("Bg,2.5,"));
    assert!(lines[2].starts_with("Bw,3,"));
    assert_eq!(lines.len(), 3);
}

#[test]
fn simmatrix_and_rescale() {
    let dir = tempfile::tempdir().unwrap();
    let family = ok(&["enumerate", "trees", "--n", "5"]);
    let file = write(dir.path(), "t5.g6", &family);
    let csv = ok(&["simmatrix", &file, "--p", "1", "--scaling", "per-family", "--rescale"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "label_a,label_b,d_p,s_p,s_prime");
    assert_eq!(lines.len(), 1 + 3);
    let out = dir.path().join("m.csv");
    ok(&["simmatrix", &file, "--jobs", "2", "--out", out.to_str().unwrap()]);
    assert!(fs::read_to_string(out).unwrap().starts_with("label_a,label_b,d_p,s_p\n"));
}

#[test]
fn ged_table() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "f.g6", "Bg\nBw\n");
    assert_eq!(ok(&["ged", &file]), "label_a,label_b,ged,s_ged\nBg,Bw,1,0.5\n");
}

#[test]
fn enumerate_counts() {
    let count = |args: &[&str]| ok(args).lines().count();
    assert_eq!(count(&["enumerate", "trees", "--n", "7"]), 11);
    assert_eq!(count(&["enumerate", "connected", "--n", "5"]), 21);
    assert_eq!(count(&["enumerate", "alkanes", "--carbons", "10"]), 75);
    assert_eq!(count(&["enumerate", "trees", "--n", "7", "--max-degree", "4"]), 9);
}

#[test]
fn generate_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ba.g6");
    let out_s = out.to_str().unwrap();
    ok(&["generate", "ba", "--n", "100", "--m", "3", "--seed", "1", "--count", "2", "--out", out_s]);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with('~'));
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(format!("{out_s}.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["base_seed"], 1);
    assert_eq!(meta["spec"]["model"]["model"], "BA");
    assert!(meta["generator"].as_str().unwrap().contains("chacha8"));

    let again = dir.path().join("again.g6");
    ok(&["generate", "ba", "--n", "100", "--m", "3", "--seed", "1", "--count", "2", "--out", again.to_str().unwrap()]);
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn experiment_outputs_do_not_depend_on_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    ok(&["experiment", "t7", "--out-dir", a.to_str().unwrap(), "--jobs", "1"]);
    ok(&["experiment", "t7", "--out-dir", b.to_str().unwrap(), "--jobs", "3"]);
    for name in ["t7_core.csv", "t7_extended.csv", "t7_s1.csv", "t7_ged.csv", "t7_family.g6", "t7.meta.json"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    assert_eq!(fs::read_to_string(a.join("t7_core.csv")).unwrap().lines().count(), 56);
}

#[test]
fn chemsim_pairs() {
    let csv = ok(&["chemsim", "--carbons", "6"]);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "label_a,label_b,s2,tanimoto_morgan");
    // Five hexane skeletons.
    assert_eq!(lines.len(), 1 + 10);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.g6", "Bg\nB w\n");
    let out = indexsim(&["indices", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let big = ok(&["enumerate", "trees", "--n", "11"]);
    let file = write(dir.path(), "t11.g6", big.lines().take(2).collect::<Vec<_>>().join("\n").as_str());
    assert_eq!(indexsim(&["ged", &file]).status.code(), Some(3));

    assert_eq!(indexsim(&["enumerate", "connected", "--n", "9"]).status.code(), Some(3));
    assert_eq!(indexsim(&["indices", "/nonexistent/file.g6"]).status.code(), Some(2));
    assert_eq!(indexsim(&["simmatrix", &bad, "--p", "0.5"]).status.code(), Some(2));
    assert_eq!(indexsim(&["bogus"]).status.code(), Some(2));

    let disconnected = write(dir.path(), "d.g6", "C?\n");
    assert_eq!(indexsim(&["indices", &disconnected]).status.code(), Some(2));
}
