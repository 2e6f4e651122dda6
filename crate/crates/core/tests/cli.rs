use std::process::Command;

fn gabor(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gabor"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn analyze_prints_a_json_report() {
    let out = gabor(&[
        "analyze",
        "--length",
        "16",
        "--lattice",
        "1,16",
        "--window",
        "delta",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], "gabor-diagnostics/1");
    assert_eq!(v["bounds"]["frame_lower"], 1.0);
    assert_eq!(v["conditions"]["consistent"], true);
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let args = [
        "analyze",
        "--length",
        "24",
        "--lattice",
        "2,4",
        "--window",
        "random:3",
    ];
    assert_eq!(gabor(&args).stdout, gabor(&args).stdout);
}

#[test]
fn bad_lattice_exits_with_an_error_naming_the_field() {
    let out = gabor(&["analyze", "--length", "12", "--lattice", "5,3"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains('a') && err.contains('5'), "{err}");
}

#[test]
fn dual_output_feeds_back_as_a_window_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dual.txt");
    let p = path.to_str().unwrap();
    let out = gabor(&["dual", "--length", "24", "--lattice", "2,4", "--out", p]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let window = format!("file:{p}");
    let out = gabor(&[
        "analyze",
        "--length",
        "24",
        "--lattice",
        "2,4",
        "--window",
        &window,
        "--tasks",
        "bounds",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["bounds"]["frame_lower"].as_f64().unwrap() > 0.0);
}

#[test]
fn sweep_writes_one_row_per_pair() {
    let out = gabor(&["sweep", "--length", "12", "--pairs", "1,1;2,3;4,6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("1,1,") && rows[2].starts_with("4,6,"));
}

#[test]
fn kernel_reports_the_critical_gaussian_kernel() {
    let out = gabor(&["kernel", "--length", "16", "--lattice", "4,4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["kernel_dimension"].as_u64().unwrap() >= 1);
    assert!(v["index"]["index"].as_u64().unwrap() >= 1);
}
