//! End-to-end checks of the command-line surface: flag validation, exit
//! codes, output formats and determinism.

use std::process::{Command, Output};

fn wince(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wince"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Pull every numeric value following `"key": ` out of a JSON string.
fn json_numbers(text: &str, key: &str) -> Vec<f64> {
    let needle = format!("\"{key}\": ");
    let mut out = vec![];
    let mut rest = text;
    while let Some(pos) = rest.find(&needle) {
        rest = &rest[pos + needle.len()..];
        let end = rest.find([',', '}', ']']).unwrap_or(rest.len());
        if let Ok(v) = rest[..end].trim().parse::<f64>() {
            out.push(v);
        }
    }
    out
}

#[test]
fn qes_l1_value() {
    let out = wince(&["qes", "--b", "2", "--l", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"schema\": 1"), "{text}");
    let values = json_numbers(&text, "value");
    assert_eq!(values.len(), 1);
    assert!((values[0] - 0.75).abs() < 1e-12);
}

#[test]
fn qes_l2_values() {
    let out = wince(&["qes", "--b", "2", "--l", "2"]);
    let values = json_numbers(&stdout(&out), "value");
    assert_eq!(values.len(), 2);
    assert!((values[0] - (-0.25 - 5.0_f64.sqrt())).abs() < 1e-10);
    assert!((values[1] - (-0.25 + 5.0_f64.sqrt())).abs() < 1e-10);
}

#[test]
fn qes_functions_csv_shape() {
    let out = wince(&[
        "qes",
        "--b",
        "1",
        "--l",
        "4",
        "--functions",
        "-6:6:400",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("u,psi_e_0,psi_o_0,psi_e_1"), "{header}");
    assert_eq!(header.split(',').count(), 1 + 8);
    assert_eq!(lines.count(), 400);
}

#[test]
fn qes_infinite_window() {
    let out = wince(&["qes", "--b", "1", "--l", "1", "--infinite", "-12:2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("continued-fraction"), "{text}");
    assert!(text.contains("\"parity\""));
}

#[test]
fn dipole_legendre_limit_values() {
    let out = wince(&["dipole", "--m", "0", "--beta", "0", "--count", "3"]);
    let values = json_numbers(&stdout(&out), "value");
    assert_eq!(values, vec![0.0, 2.0, 6.0]);
}

#[test]
fn dipole_residuals_reported_small() {
    let out = wince(&["dipole", "--m", "1", "--beta", "1", "--count", "2"]);
    let text = stdout(&out);
    let values = json_numbers(&text, "value");
    assert_eq!(values.len(), 2);
    for r in json_numbers(&text, "residual") {
        assert!(r.abs() < 1e-8, "residual {r}");
    }
}

#[test]
fn dipole_theta_table() {
    let out = wince(&[
        "dipole", "--m", "0", "--beta", "2", "--count", "1", "--theta", "0:pi:100", "--rep",
        "jacobi", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "theta,Theta_0");
    assert_eq!(lines.count(), 100);
}

#[test]
fn mathieu_values_and_eval() {
    let out = wince(&["mathieu", "--k", "1", "--count", "4"]);
    let values = json_numbers(&stdout(&out), "value");
    assert_eq!(values.len(), 4);
    assert!((values[0] - (-0.455138604)).abs() < 1e-8);

    let out = wince(&[
        "mathieu",
        "--k",
        "1",
        "--count",
        "1",
        "--modified",
        "--eval",
        "0:3:50",
    ]);
    let text = stdout(&out);
    assert!(text.contains("all u"), "{text}");
    assert!(text.contains("\"samples\""));
}

#[test]
fn deterministic_output() {
    let a = stdout(&wince(&["mathieu", "--k", "1.3", "--count", "3"]));
    let b = stdout(&wince(&["mathieu", "--k", "1.3", "--count", "3"]));
    assert_eq!(a, b);
}

#[test]
fn flag_errors_exit_2() {
    for args in [
        vec!["qes", "--l", "1"],
        vec!["qes", "--b", "-1", "--l", "1"],
        vec!["qes", "--b", "2", "--l", "0"],
        vec!["mathieu", "--k", "0", "--count", "1"],
        vec!["dipole", "--m", "0", "--beta", "-2", "--count", "1"],
        vec!["dipole", "--m", "0", "--beta", "1", "--count", "0"],
        vec!["qes", "--b", "2", "--l", "1", "--bogus", "3"],
        vec!["nope"],
    ] {
        let out = wince(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn fifteen_significant_digits() {
    let text = stdout(&wince(&["qes", "--b", "2", "--l", "1", "--format", "csv"]));
    // 7.50000000000000e-1 carries exactly 15 significant digits
    assert!(text.contains("7.50000000000000e-1"), "{text}");
}
