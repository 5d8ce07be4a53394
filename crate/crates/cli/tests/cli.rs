use std::path::PathBuf;
use std::process::{Command, Output};

use adgroup::corpus::{bundled_catalog, parse_csv, scan, ScanOptions};

fn adgroup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adgroup")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("adgroup-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn compute_examples() {
    let out = adgroup(&["compute", "--family", "sl2", "--param", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ad             9/2 (4.500000)"));

    let out = adgroup(&["compute", "--family", "cyclic", "--param", "17", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ad"], "1");
    assert_eq!(v["order"], 17);

    let out = adgroup(&["compute", "A5xA5"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("3721/225"));
}

#[test]
fn construction_failure_exits_two() {
    let out = adgroup(&["compute", "--family", "sl2", "--param", "6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = adgroup(&["compute", "--family", "symmetric", "--param", "9", "--cap", "1000"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_examples() {
    let out = adgroup(&["table", "--family", "cyclic", "--param", "4"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("z = exp(2 pi i/4)"));
    assert!(text.lines().any(|l| l.starts_with("X.2") && l.ends_with("-z")));

    let out = adgroup(&["table", "--family", "alternating", "--param", "5", "--approx"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("~ 1.618034") && text.contains("~ -0.618034"));

    let out = adgroup(&["table", "--family", "symmetric", "--param", "6", "--table-cap", "100"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_csv_matches_reports() {
    let csv = scratch("scan.csv");
    let out = adgroup(&["scan", "bundled", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_csv(std::fs::File::open(&csv).unwrap()).unwrap();
    let a5 = rows.iter().find(|r| r.name == "A5").unwrap();
    assert_eq!(a5.ad_frac, "61/15");

    let report = scan(&bundled_catalog(), &ScanOptions::default());
    let reports: Vec<_> = report.reports().collect();
    assert_eq!(rows.len(), reports.len());
    for (row, r) in rows.iter().zip(reports) {
        assert_eq!(row.name, r.name);
        assert_eq!(row.ad(), Some(r.ad.clone()));
        assert_eq!(row.cp(), Some(r.cp.clone()));
    }
}

#[test]
fn verify_exit_codes() {
    assert_eq!(adgroup(&["verify", "missing.json"]).status.code(), Some(2));

    let bad_json = scratch("bad.json");
    std::fs::write(&bad_json, "[{\"name\": \"X\",").unwrap();
    assert_eq!(adgroup(&["verify", bad_json.to_str().unwrap()]).status.code(), Some(2));

    let corrupted = scratch("corrupted.json");
    std::fs::write(
        &corrupted,
        r#"[{"name":"S3","kind":"symmetric","params":[3]},{"name":"Bad","cayley":[[0,1],[1,1]]}]"#,
    )
    .unwrap();
    let out = adgroup(&["verify", corrupted.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("construction error: Bad"));

    let small = scratch("small.json");
    std::fs::write(
        &small,
        r#"[{"name":"D10","kind":"dihedral","params":[5]},{"name":"C3","kind":"cyclic","params":[3]},{"name":"D10xC3","product":["D10","C3"]}]"#,
    )
    .unwrap();
    let summary = scratch("summary.txt");
    let out = adgroup(&["verify", small.to_str().unwrap(), "--summary", summary.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&summary).unwrap(), out.stdout);
}

#[test]
fn verify_summary_lists_theorems() {
    let out = adgroup(&["verify", "bundled"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for check in ["gap", "solvability", "holder", "center_index"] {
        let line = text.lines().find(|l| l.split_whitespace().next() == Some(check)).unwrap();
        let cols: Vec<&str> = line.split_whitespace().collect();
        assert_ne!(cols[1], "0", "{line}");
        assert_eq!(cols[3], "0", "{line}");
    }
    assert!(text.contains("result: PASS"));
}

#[test]
fn export_and_families() {
    let out = adgroup(&["export", "bundled"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = parse_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), bundled_catalog().len());

    let out = adgroup(&["families"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("extraspecial") && text.contains("p^(2n+1)"));
}
