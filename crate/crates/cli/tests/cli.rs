use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gzoo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gzoo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn catalog(file: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../catalog")
        .join(file)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn predict_polar_json() {
    let o = gzoo(&["predict-polar", "-p", "2", "-n", "3", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["points"], "63");
    assert_eq!(v["generators"], "135");
}

#[test]
fn predict_polar_rejects_bad_input() {
    let o = gzoo(&["predict-polar", "-p", "4", "-n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_a5() {
    let o = gzoo(&["enumerate", "--grp", &catalog("A5.grp"), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["index"], 60);
    assert_eq!(v["table"].as_array().unwrap().len(), 60);
    assert_eq!(v["representatives"][0], "1");
}

#[test]
fn enumeration_budget_exit_code() {
    let o = gzoo(&[
        "enumerate",
        "--grp",
        &catalog("A5.grp"),
        "--max-cosets",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn missing_file_is_input_error() {
    let o = gzoo(&["analyze", "--perm", "/nonexistent/x.perm"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonexistent"));
}

#[test]
fn kappa_refuses_raw_permutations() {
    let o = gzoo(&["kappa", "--perm", &catalog("A8_35.perm")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn kappa_on_petersen_cosets() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("s.sub");
    std::fs::write(
        &sub,
        "sub: a, b*a*b*a*b^-1*a^-1*b^-1, b*a*b^-1*a*b*a^-1*b\n",
    )
    .unwrap();
    let o = gzoo(&[
        "kappa",
        "--grp",
        &catalog("A5.grp"),
        "--sub",
        sub.to_str().unwrap(),
        "--class",
        "0",
        "--json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["index"], 10);
    assert_eq!(v["configuration"], "[10_3, 15_2]");
    assert_eq!(v["edges"], 15);
}

#[test]
fn low_index_emits_perm_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = gzoo(&[
        "low-index",
        "--grp",
        &catalog("A5.grp"),
        "--max-index",
        "15",
        "--emit-perm",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(
        names,
        ["1.perm", "10.perm", "12.perm", "15.perm", "5.perm", "6.perm"]
    );

    let perm: PathBuf = dir.path().join("10.perm");
    let o = gzoo(&["analyze", "--perm", perm.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(text.contains("rank: 3"), "{text}");
    assert!(text.contains("subdegrees: 1 3 6"), "{text}");

    let o = gzoo(&["dessin", "--perm", perm.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["signature"]["B"], 4);
    assert_eq!(v["signature"]["W"], 6);
}

#[test]
fn geometry_of_a8_on_35_points() {
    let o = gzoo(&[
        "geometry",
        "--perm",
        &catalog("A8_35.perm"),
        "--class",
        "1",
        "--mode",
        "defined",
        "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["configuration"], "[35_6, 30_7]");
    assert_eq!(v["gu"]["u"], 3);
}

#[test]
fn pipeline_is_deterministic() {
    let a = gzoo(&["pipeline", "A5", "--json"]);
    let b = gzoo(&["pipeline", "A5", "--json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let rows = v.as_array().unwrap();
    let indices: Vec<u64> = rows.iter().map(|r| r["index"].as_u64().unwrap()).collect();
    assert_eq!(indices, [1, 5, 6, 10, 12, 15]);
    assert!(rows.iter().all(|r| r["schema_version"] == 1));
}

#[test]
fn pipeline_unavailable_entry() {
    let o = gzoo(&["pipeline", "Co2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_check_exit_codes() {
    let ok = gzoo(&["report", "--check", "--group", "A8-35", "--group", "A5-10"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("2 match, 0 mismatch"));

    // rank and m of the index-15 row differ from the reference values
    let bad = gzoo(&["report", "--check", "--group", "A5"]);
    assert_eq!(bad.status.code(), Some(4));

    let skipped = gzoo(&["report", "--check", "--group", "Fi23", "--json"]);
    assert_eq!(skipped.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&skipped.stdout).unwrap();
    assert_eq!(v[0]["verdict"], "not-computable-at-budget");
}

#[test]
fn user_catalog_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("s3.perm"), "degree: 3\n(1,2)\n(1,2,3)\n").unwrap();
    std::fs::write(
        dir.path().join("catalog.toml"),
        "[[group]]\nname = \"S3\"\npermutations = \"s3.perm\"\n\n[[group.expect]]\nsource = \"hand\"\nindex = 3\nrank = 2\n",
    )
    .unwrap();
    let d = dir.path().to_str().unwrap();
    let o = gzoo(&["report", "--check", "--catalog", d]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    assert!(stdout(&o).contains("1 match"), "{}", stdout(&o));

    std::fs::write(dir.path().join("s3.perm"), "(1,2)\n").unwrap();
    let o = gzoo(&["report", "--check", "--catalog", d]);
    assert_eq!(o.status.code(), Some(2));

    std::fs::write(
        dir.path().join("catalog.toml"),
        "[[group]]\nname = \"S3\"\npermutations = \"s3.perm\"\nrank = 2\n",
    )
    .unwrap();
    let o = gzoo(&["report", "--catalog", d]);
    assert_eq!(o.status.code(), Some(2));
}
