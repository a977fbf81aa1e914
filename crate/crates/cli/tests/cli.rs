//! End-to-end runs of the `magnion` binary.

use std::path::Path;
use std::process::{Command, Output};

fn magnion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magnion"))
        .args(args)
        .env_remove("MAGNION_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = magnion(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// Rows of a CSV document as header-keyed maps.
fn records(csv_text: &str) -> Vec<std::collections::HashMap<String, String>> {
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let header = reader.headers().unwrap().clone();
    reader
        .records()
        .map(|r| {
            let r = r.unwrap();
            header
                .iter()
                .map(String::from)
                .zip(r.iter().map(String::from))
                .collect()
        })
        .collect()
}

fn number(row: &std::collections::HashMap<String, String>, key: &str) -> f64 {
    row[key]
        .parse()
        .unwrap_or_else(|_| panic!("{key} = {:?}", row[key]))
}

#[test]
fn energy_at_one_geometry() {
    let text = stdout(&["energy", "--field-gauss", "1e12", "--distance", "0.291"]);
    let rows = records(&text);
    assert_eq!(rows.len(), 1);
    let e = number(&rows[0], "E2_hartree");
    assert!((e + 8.86).abs() < 0.005, "{e}");
    let parts =
        number(&rows[0], "e0") + number(&rows[0], "first_order") - number(&rows[0], "second_order");
    assert!((parts - number(&rows[0], "e2")).abs() < 2e-4);
}

#[test]
fn unit_charge_is_the_default() {
    let base = ["energy", "--field-gauss", "5e11", "--distance", "0.4"];
    let explicit = stdout(&[&base[..], &["--charge", "1"]].concat());
    assert_eq!(stdout(&base), explicit);
}

#[test]
fn quadrature_path_agrees_with_the_closed_form() {
    let base = [
        "energy",
        "--field-gauss",
        "1e13",
        "--distance",
        "0.15",
        "--charge",
        "1.5",
    ];
    let closed = records(&stdout(&base));
    let quad = records(&stdout(&[&["--force-quadrature"][..], &base[..]].concat()));
    for key in ["e0", "first_order", "second_order", "E2_hartree"] {
        assert_eq!(closed[0][key], quad[0][key], "{key}");
    }
}

#[test]
fn oracle_columns_appear_on_request() {
    let text = stdout(&[
        "energy",
        "--field-gauss",
        "1e14",
        "--distance",
        "0.084",
        "--oracle",
    ]);
    let row = &records(&text)[0];
    let gap = number(row, "oracle_gap_pct");
    assert!(gap > 0.0 && gap < 3.0, "{gap}");
    assert!(number(row, "lambda0_fd") > number(row, "e2"));
}

#[test]
fn minimize_reproduces_the_weak_field_equilibrium() {
    let rows = records(&stdout(&["minimize", "--field-gauss", "1e10"]));
    assert_eq!(rows[0]["R_eq_au"], "1.494");
    let e = number(&rows[0], "E2_hartree");
    assert!((e + 1.49).abs() < 0.01, "{e}");
    let (lo, hi) = (number(&rows[0], "R_lo_au"), number(&rows[0], "R_hi_au"));
    assert!(lo < 1.494 && 1.494 < hi);
}

#[test]
fn output_does_not_depend_on_the_thread_count() {
    let args = ["minimize", "--field-gauss", "1e10,1e12,1e14"];
    let one = stdout(&[&["--jobs", "1"][..], &args[..]].concat());
    let two = stdout(&[&["--jobs", "2"][..], &args[..]].concat());
    assert_eq!(one, two);
    let fields: Vec<String> = records(&one).iter().map(|r| r["B_gauss"].clone()).collect();
    assert_eq!(fields, ["1e10", "1e12", "1e14"]);
}

#[test]
fn lai_table_is_within_tolerance() {
    let rows = records(&stdout(&["table", "--which", "lai"]));
    assert_eq!(rows.len(), 9);
    for row in &rows {
        assert_eq!(row["within_tol"], "true", "{row:?}");
    }
}

#[test]
fn stability_without_critical_search() {
    let text = stdout(&[
        "stability",
        "--field-gauss",
        "1e13",
        "--charge",
        "1,2",
        "--no-critical",
    ]);
    let rows = records(&text);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["classification"] == "bound"));
    assert!(rows
        .iter()
        .all(|r| r["Z_c_bs"].is_empty() && r["Z_cr"].is_empty()));
}

#[test]
fn bad_input_fails_without_leaving_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad.csv");
    let out_arg = out.to_str().unwrap();
    for args in [
        vec![
            "energy",
            "--field-gauss",
            "-1e12",
            "--distance",
            "0.3",
            "--out",
            out_arg,
        ],
        vec![
            "energy",
            "--field-gauss",
            "1e12",
            "--distance",
            "0",
            "--out",
            out_arg,
        ],
        vec![
            "minimize",
            "--field-gauss",
            "1e12",
            "--charge",
            "0.5",
            "--out",
            out_arg,
        ],
        vec![
            "--r-min",
            "2",
            "--r-max",
            "1",
            "minimize",
            "--field-gauss",
            "1e12",
        ],
        vec![
            "--tolerance-scale",
            "0.5",
            "minimize",
            "--field-gauss",
            "1e12",
        ],
    ] {
        let result = magnion(&args);
        assert!(!result.status.success(), "{args:?} succeeded");
        assert!(result.stdout.is_empty());
        let message = String::from_utf8_lossy(&result.stderr);
        assert!(message.starts_with("error: "), "{message}");
        assert!(!message.contains("backtrace"), "{message}");
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn out_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("eq.csv");
    let printed = stdout(&["minimize", "--field-gauss", "1e12"]);
    let written = stdout(&[
        "minimize",
        "--field-gauss",
        "1e12",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(written.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), printed);
    let sidecar = sidecar(&out);
    assert_eq!(sidecar["command"], "minimize");
    assert_eq!(sidecar["rows"], 1);
    assert_eq!(sidecar["columns"][2], "R_eq_au");
    assert_eq!(sidecar["config"]["evaluation"], "closed_form");
    assert!(sidecar["config"].get("jobs").is_none());
}

fn sidecar(csv_path: &Path) -> serde_json::Value {
    let text = std::fs::read_to_string(csv_path.with_extension("json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn figure_data_is_consistent() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&["figures", "--out", dir.path().to_str().unwrap()]);
    let read = |name: &str| records(&std::fs::read_to_string(dir.path().join(name)).unwrap());
    let (fig1, fig2, fig3, fig4) = (
        read("fig1.csv"),
        read("fig2.csv"),
        read("fig3.csv"),
        read("fig4.csv"),
    );

    assert_eq!(fig1.len(), 30);
    assert!(!fig2.is_empty() && fig2.len() < fig1.len());
    assert_eq!(fig3.len(), fig1.len());
    for name in ["fig1", "fig2", "fig3", "fig4"] {
        let meta = sidecar(&dir.path().join(format!("{name}.csv")));
        assert_eq!(meta["command"], "figures");
    }

    let fields: Vec<f64> = fig1.iter().map(|r| number(r, "B_gauss")).collect();
    assert!(fields.windows(2).all(|w| w[0] < w[1]));
    // Binding grows with the field; R·L falls.
    let binding: Vec<f64> = fig1.iter().map(|r| number(r, "minus_E2_hartree")).collect();
    assert!(binding.windows(2).all(|w| w[0] < w[1]));
    let product: Vec<f64> = fig4.iter().map(|r| number(r, "R_eq_L")).collect();
    assert!(product.windows(2).all(|w| w[0] > w[1]), "{product:?}");

    // The distance column matches a direct minimization.
    let row = fig3.iter().find(|r| r["B_gauss"] == "1e12").unwrap();
    let direct = records(&stdout(&["minimize", "--field-gauss", "1e12"]));
    assert_eq!(row["R_eq_au"], direct[0]["R_eq_au"]);
}
