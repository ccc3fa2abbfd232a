use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use num_bigint::BigUint;
use serde_json::Value;
use sha2::{Digest, Sha256};

use symgraph::cli::{run, Command as Cmd, RunConfig};
use symgraph::presets;
use symgraph::total_count;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symgraph"))
        .args(args)
        .env_remove("SYMGRAPH_ENUM_CAP")
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = bin(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&ok(&full)).unwrap()
}

/// SHA-256 of every data file in `dir`, manifest excluded.
fn digests(dir: &Path) -> BTreeMap<String, String> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "manifest.json")
        .map(|p| {
            let hash = Sha256::digest(fs::read(&p).unwrap());
            let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
            (p.file_name().unwrap().to_string_lossy().into_owned(), hex)
        })
        .collect()
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 4] = [
        &["analyze", "--graph", "G1", "--n-max", "40"],
        &["combine", "--graph", "K3", "--graph", "G2", "--t-max", "4"],
        &["scan", "--k-max", "3"],
        &["paper-examples"],
    ];
    for (i, args) in runs.iter().enumerate() {
        for format in ["csv", "json"] {
            let a = tmp.path().join(format!("{i}-{format}-a"));
            let b = tmp.path().join(format!("{i}-{format}-b"));
            for dir in [&a, &b] {
                let mut full = args.to_vec();
                full.extend(["--format", format, "--out", dir.to_str().unwrap()]);
                ok(&full);
            }
            let (da, db) = (digests(&a), digests(&b));
            assert!(da.len() >= 2, "{args:?}");
            assert_eq!(da, db, "{args:?} {format}");
            let manifest: Value =
                serde_json::from_str(&fs::read_to_string(a.join("manifest.json")).unwrap())
                    .unwrap();
            assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
            assert_eq!(manifest["config"]["format"], format);
            assert!(manifest["timestamp_unix"].as_u64().unwrap() > 0);
        }
    }
}

#[test]
fn count_csv_round_trips_exactly() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("g1");
    ok(&[
        "analyze",
        "--graph",
        "G1",
        "--n-max",
        "120",
        "--out",
        dir.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(dir.join("counts.csv")).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().clone();
    assert_eq!(
        header.iter().collect::<Vec<_>>(),
        [
            "n",
            "omega_total",
            "omega_row_X",
            "omega_row_Y",
            "omega_row_Z",
            "omega_col_X",
            "omega_col_Y",
            "omega_col_Z"
        ]
    );
    let mut rewritten = csv::Writer::from_writer(Vec::new());
    rewritten.write_record(&header).unwrap();
    let g = presets::g1();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.unwrap();
        let n: u64 = rec[0].parse().unwrap();
        assert_eq!(n, i as u64 + 1);
        let total: BigUint = rec[1].parse().unwrap();
        assert_eq!(total, total_count(&g, n).unwrap());
        let rows: BigUint = (2..5).map(|c| rec[c].parse::<BigUint>().unwrap()).sum();
        let cols: BigUint = (5..8).map(|c| rec[c].parse::<BigUint>().unwrap()).sum();
        assert_eq!((rows, cols), (total.clone(), total));
        let fields: Vec<String> = rec
            .iter()
            .map(|f| f.parse::<BigUint>().unwrap().to_string())
            .collect();
        rewritten.write_record(&fields).unwrap();
    }
    assert_eq!(
        String::from_utf8(rewritten.into_inner().unwrap()).unwrap(),
        text
    );

    let bounds_dir = tmp.path().join("bounds");
    ok(&[
        "combine",
        "--graph",
        "G1",
        "--graph",
        "G2",
        "--out",
        bounds_dir.to_str().unwrap(),
    ]);
    let text = fs::read_to_string(bounds_dir.join("bounds.csv")).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    for rec in reader.records() {
        let rec = rec.unwrap();
        let t: u64 = rec[0].parse().unwrap();
        let r = symgraph::combiner::example_one_bounds(t).unwrap();
        assert_eq!(rec[2].parse::<BigUint>().unwrap(), r.lower);
        assert_eq!(rec[3].parse::<BigUint>().unwrap(), r.actual);
        assert_eq!(rec[4].parse::<BigUint>().unwrap(), r.upper);
    }
}

#[test]
fn analyze_fibonacci_graph() {
    let v = json(&["analyze", "--graph", "G1", "--n-max", "30"]);
    let s = &v["summary"];
    assert_eq!(s["growth"]["kind"], "Exponential");
    let rho = s["growth"]["rho"].as_f64().unwrap();
    assert!((rho - 1.6180339887).abs() < 1e-9);
    // ω^n = 2ω^(n-1) - ω^(n-3), seeded with the first three counts
    let mut w: Vec<i128> = vec![3, 6, 11];
    while w.len() < 30 {
        let n = w.len();
        w.push(2 * w[n - 1] - w[n - 3]);
    }
    assert_eq!(s["omega_n_max"], w[29].to_string());
    assert_eq!(s["recurrence"]["holds"], true);
    assert_eq!(s["char_poly"]["display"], "λ^3 - 2λ^2 + 1");
    let counts = v["tables"]["counts"].as_array().unwrap();
    assert_eq!(counts.len(), 30);
    assert!(counts[29]["omega_total"].is_string());
}

#[test]
fn analyze_two_cycle_and_linear_graph() {
    let v = json(&["analyze", "--graph", "C2", "--n-max", "12"]);
    assert_eq!(v["summary"]["growth"]["kind"], "Polynomial");
    assert_eq!(v["summary"]["growth"]["poly_degree"], 0);
    for row in v["tables"]["counts"].as_array().unwrap() {
        assert_eq!(row["omega_total"], "2");
    }

    let v = json(&["analyze", "--graph", "G2", "--n-max", "100"]);
    assert_eq!(v["summary"]["growth"]["kind"], "Polynomial");
    assert_eq!(v["summary"]["growth"]["poly_degree"], 1);
    assert!(v["summary"]["h_top_estimate"].as_f64().unwrap() < 0.03);
}

#[test]
fn graph_files_and_presets_agree() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("fib.json");
    fs::write(&path, presets::g1().to_json()).unwrap();
    let from_file = json(&[
        "analyze",
        "--graph",
        path.to_str().unwrap(),
        "--n-max",
        "20",
    ]);
    let from_preset = json(&["analyze", "--graph", "g1", "--n-max", "20"]);
    assert_eq!(from_file["tables"], from_preset["tables"]);
}

#[test]
fn combine_reference_systems() {
    let v = json(&[
        "combine",
        "--graph",
        "G1",
        "--graph",
        "G2",
        "--schedule",
        "paper",
        "--t-max",
        "6",
    ]);
    let bounds = v["tables"]["bounds"].as_array().unwrap();
    assert_eq!(bounds.len(), 6);
    assert!(bounds.iter().all(|r| r["holds"] == true));
    assert_eq!(
        (&bounds[0]["t"], &bounds[0]["n"]),
        (&Value::from(1), &Value::from(16))
    );
    assert_eq!(bounds[0]["actual"], "91");
    assert_eq!(v["summary"]["witness"]["subword"], "ZZ");

    let v = json(&["combine", "--graph", "K3", "--graph", "G2", "--t-max", "8"]);
    let first = &v["tables"]["bounds"][0];
    assert_eq!(
        (&first["lower"], &first["actual"], &first["upper"]),
        (
            &Value::from("81"),
            &Value::from("729"),
            &Value::from("2025")
        )
    );

    let v = json(&[
        "combine", "--graph", "G1", "--graph", "G1", "--t-max", "2", "--n-max", "81",
    ]);
    assert!(v["summary"]["bounds"].is_null());
    assert!(v["summary"]["witness"]["word"].is_null());
    for row in v["tables"]["counts"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap();
        assert_eq!(
            row["omega"],
            total_count(&presets::g1(), n).unwrap().to_string()
        );
    }
}

#[test]
fn combine_with_schedule_file() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("sched.json");
    fs::write(&path, r#"{"g": [4, 16]}"#).unwrap();
    let v = json(&[
        "combine",
        "--graph",
        "K3",
        "--graph",
        "G2",
        "--schedule",
        path.to_str().unwrap(),
    ]);
    let counts = v["tables"]["counts"].as_array().unwrap();
    assert_eq!(counts.len(), 2);
    assert_eq!(counts[1]["omega"], "729");
    assert!(v["summary"]["bounds"].is_null());
}

#[test]
fn scan_summaries() {
    let v = json(&["scan", "--k-max", "2"]);
    assert_eq!(v["summary"]["mixed_strongly_connected"], 0);
    let v = json(&["scan", "--k-max", "1"]);
    let rows = v["tables"]["scan"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["kind"], "Polynomial");
    assert_eq!(rows[0]["poly_degree"], 0);
    let v = json(&["scan", "--k-max", "3"]);
    assert_eq!(v["summary"]["strata"][2]["candidates"], 512);
}

#[test]
fn scan_of_four_letters_reports_the_clique_chain() {
    let out = run(&RunConfig {
        k_max: Some(4),
        ..RunConfig::new(Cmd::Scan)
    })
    .unwrap();
    let chain = presets::clique_chain().mask();
    let row = out
        .table("scan")
        .unwrap()
        .rows
        .iter()
        .find(|r| r[0] == chain)
        .cloned();
    let row = row.expect("chain is weakly connected");
    assert_eq!(row[2], false);
    assert_eq!(row[3], "MixedPolynomialExponential");
    assert_eq!(row[5], 1);
}

#[test]
fn entropy_fit_of_combined_system() {
    let v = json(&[
        "entropy-fit",
        "--graph",
        "K3",
        "--graph",
        "G2",
        "--t-max",
        "12",
    ]);
    let best = &v["summary"]["fit"]["best"];
    assert_eq!(best["model"], "Power");
    let mu = best["mu"].as_f64().unwrap();
    assert!((0.45..=0.55).contains(&mu));
    assert_eq!(v["tables"]["entropy"].as_array().unwrap().len(), 12);
    assert!(v["summary"]["report"]
        .as_str()
        .unwrap()
        .contains("model: Power"));
}

#[test]
fn paper_examples_need_no_inputs_and_pass_strict() {
    let out = bin(&["paper-examples", "--strict", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["example_one"]["omega_16"], "91");
    assert_eq!(v["summary"]["example_two"]["omega_16"], "729");
    assert_eq!(v["summary"]["scan"]["mixed_strongly_connected"], 0);
    assert_eq!(v["tables"]["stretched"].as_array().unwrap().len(), 12);
}

#[test]
fn stdout_csv_has_delimited_tables() {
    let text = ok(&["analyze", "--graph", "C2", "--n-max", "3"]);
    assert!(text.starts_with("# summary\n"));
    assert!(text.contains("# table: counts\nn,omega_total,"));
    assert!(text.contains("# table: entropy\nn,omega,H,h_top_estimate\n"));
}

#[test]
fn errors_exit_nonzero() {
    let failing: [&[&str]; 8] = [
        &["analyze", "--graph", "no-such-graph"],
        &["analyze"],
        &["analyze", "--graph", "G1", "--n-max", "0"],
        &["combine", "--graph", "K3", "--graph", "C2"],
        &[
            "combine", "--graph", "G1", "--graph", "G2", "--t-max", "1", "--n-max", "17",
        ],
        &["scan", "--k-max", "5"],
        &[
            "combine",
            "--graph",
            "G1",
            "--graph",
            "G2",
            "--schedule",
            "/nonexistent/schedule.json",
        ],
        &["analyze", "--graph", "G1", "--format", "xml"],
    ];
    for args in failing {
        let out = bin(args);
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn enumeration_cap_is_configurable() {
    let args = ["analyze", "--graph", "K3", "--n-max", "6", "--enumerate"];
    let out = Command::new(env!("CARGO_BIN_EXE_symgraph"))
        .args(args)
        .env("SYMGRAPH_ENUM_CAP", "100")
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap is 100"));
    let v = json(&args);
    assert_eq!(v["summary"]["enumeration"]["all_agree"], true);
}
