use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn rpforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rpforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_run(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = rpforge(&full);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout:?}"));
    (out.status.code().unwrap(), value)
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn generate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, v) = json_run(&["generate", "--n", "4", "--k", "2", "--out", out]);
    assert_eq!(code, 0);
    assert_eq!(v["family"]["size"], 14);
    assert_eq!(v["family"]["bound"], 24);
    let family = read_json(&dir.path().join("family.json"));
    assert_eq!(family["groups"], json!([[1, 2], [3, 4]]));
    assert_eq!(family["members"].as_array().unwrap().len(), 14);
    assert_eq!(family["members"][4], json!([1, 2]));
    assert!(!family["members"].as_array().unwrap().contains(&json!([1, 2, 3, 4])));

    let (code, v) = json_run(&["generate", "--n", "3", "--single-group"]);
    assert_eq!(code, 0);
    assert_eq!(v["family"]["size"], 7);

    let out = rpforge(&["generate", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n"));
}

fn write_family(dir: &Path, n: usize, members: &[&[usize]]) -> String {
    let path = dir.join("family.json");
    let doc = json!({"n": n, "groups": null, "members": members});
    std::fs::write(&path, doc.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn verify_reports_named_violations() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let out = out.to_str().unwrap();

    // Grouped n = 4, k = 2 family with the singleton {3} removed.
    let members: Vec<&[usize]> = vec![
        &[1],
        &[2],
        &[4],
        &[1, 2],
        &[1, 3],
        &[1, 4],
        &[2, 3],
        &[2, 4],
        &[3, 4],
        &[1, 2, 3],
        &[1, 2, 4],
        &[1, 3, 4],
        &[2, 3, 4],
    ];
    let file = write_family(dir.path(), 4, &members);
    let (code, v) = json_run(&["verify", "--family", &file, "--out", out]);
    assert_eq!(code, 11);
    assert_eq!(v["failed_stage"], "verify");
    let report = read_json(&Path::new(out).join("verify.json"));
    let singletons = &report["reports"][0];
    assert_eq!(singletons["condition"], "singletons");
    assert_eq!(
        singletons["violations"],
        json!([{"kind": "missing_singleton", "element": 3}])
    );

    // {1,2,3} present but {1,2} missing.
    let file = write_family(dir.path(), 3, &[&[1], &[2], &[3], &[1, 3], &[2, 3], &[1, 2, 3]]);
    let (code, _) = json_run(&["verify", "--family", &file, "--out", out]);
    assert_eq!(code, 11);
    let report = read_json(&Path::new(out).join("verify.json"));
    let downward = &report["reports"][1];
    assert_eq!(downward["condition"], "downward_closed");
    assert!(downward["violations"]
        .as_array()
        .unwrap()
        .contains(&json!({"kind": "not_downward_closed", "set": [1, 2, 3], "element": 3})));
}

#[test]
fn verify_generated_and_bitstring_families() {
    let (code, v) = json_run(&["verify", "--n", "12", "--k", "3"]);
    assert_eq!(code, 0);
    assert!(v["verify"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bits.json");
    std::fs::write(
        &path,
        r#"{"n": 2, "groups": [[1], [2]], "members": ["01", "10", "11"]}"#,
    )
    .unwrap();
    let (code, v) = json_run(&["pipeline", "--family", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["family"]["matches_partition"], true);
    assert_eq!(v["quotient"]["vertices"], 3);
}

#[test]
fn bad_family_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"n": 2, "members": [[3]]}"#).unwrap();
    let out = rpforge(&["verify", "--family", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(10));
    let out = rpforge(&["verify", "--family", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn pipeline_examples() {
    let (code, v) = json_run(&["pipeline", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["quotient"]["vertices"], 3);
    assert_eq!(v["quotient"]["f_vector"], json!([3, 3]));
    assert_eq!(v["quotient"]["classification"], "circle");

    let (code, v) = json_run(&["pipeline", "--n", "3", "--single-group"]);
    assert_eq!(code, 0);
    assert_eq!(v["quotient"]["vertices"], 7);
    assert_eq!(v["quotient"]["classification"], "projective plane");
    assert_eq!(v["homology"]["z"], "Z, Z/2, 0");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, v) = json_run(&["pipeline", "--n", "4", "--k", "2", "--eps", "2^-64", "--out", out]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["quotient"]["vertices"], 14);
    assert_eq!(v["homology"]["z"], "Z, Z/2, 0, Z");
    let h = read_json(&dir.path().join("homology_z.json"));
    assert_eq!(h["computed"]["dims"][3], json!({"d": 3, "rank": 1, "torsion": []}));
    assert_eq!(h["matches"], true);
    for file in [
        "lattice.json",
        "lattice.off",
        "complex.json",
        "complex.txt",
        "quotient.json",
        "quotient.txt",
        "homology_z2.json",
        "summary.json",
    ] {
        assert!(dir.path().join(file).is_file(), "{file}");
    }
    let off = std::fs::read_to_string(dir.path().join("lattice.off")).unwrap();
    assert!(off.starts_with("nOFF\n4\n28 "));
    let quotient_text = std::fs::read_to_string(dir.path().join("quotient.txt")).unwrap();
    assert_eq!(quotient_text.lines().count(), 53);
}

#[test]
fn hull_limit_is_a_usage_error() {
    assert_eq!(rpforge(&["pipeline", "--n", "8"]).status.code(), Some(2));
    assert_eq!(
        rpforge(&["pipeline", "--n", "8", "--stage", "verify"]).status.code(),
        Some(0)
    );
}

#[test]
fn identical_configs_give_identical_files() {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    for (d, jobs) in dirs.iter().zip(["1", "2"]) {
        let out = rpforge(&[
            "--jobs",
            jobs,
            "pipeline",
            "--n",
            "5",
            "--out",
            d.path().to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let mut names: Vec<_> = std::fs::read_dir(dirs[0].path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert_eq!(names.len(), 11);
    for name in names {
        let a = std::fs::read(dirs[0].path().join(&name)).unwrap();
        let b = std::fs::read(dirs[1].path().join(&name)).unwrap();
        assert!(a == b, "{name:?} differs");
    }
}

#[test]
fn bound_table_rows() {
    let (code, v) = json_run(&["bound-table", "--n-max", "100"]);
    assert_eq!(code, 0);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 100);
    assert_eq!(rows[0]["size"], 1);
    assert_eq!(rows[0]["baseline"], 1);
    assert_eq!(
        (&rows[3]["size"], &rows[3]["bound"], &rows[3]["baseline"]),
        (&json!(14), &json!(24), &json!(15))
    );
    let r100 = &rows[99];
    assert_eq!(
        (&r100["k"], &r100["s"], &r100["method"]),
        (&json!(10), &json!(10), &json!("closed_form"))
    );
    let size: u128 = r100["size"]
        .as_u64()
        .map(u128::from)
        .unwrap_or_else(|| r100["size"].as_str().unwrap().parse().unwrap());
    assert!(size < 1u128 << 70);

    let text = rpforge(&["bound-table", "--n-max", "5", "--k", "1"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text
        .lines()
        .nth(5)
        .unwrap()
        .split_whitespace()
        .take(4)
        .eq(["5", "1", "5", "31"]));
}

#[test]
fn log_level_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_rpforge"))
        .args(["generate", "--n", "3"])
        .env("RPFORGE_LOG", "info")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("family"));
    let quiet = rpforge(&["generate", "--n", "3"]);
    assert!(quiet.stderr.is_empty());
}
