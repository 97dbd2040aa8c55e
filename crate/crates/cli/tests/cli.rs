use std::process::{Command, Output};

use serde_json::Value;

fn zclass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zclass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> (Vec<String>, Vec<Vec<String>>) {
    let text = stdout(o);
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    (header, lines.map(|l| l.split(',').map(String::from).collect()).collect())
}

fn erf(x: f64) -> f64 {
    // independent series, adequate for |x| ≤ 3
    let mut term = x;
    let mut sum = x;
    for n in 1..200 {
        term *= -x * x / n as f64;
        sum += term / (2 * n + 1) as f64;
    }
    2.0 / std::f64::consts::PI.sqrt() * sum
}

#[test]
fn gaussian_determinant_row() {
    let o = zclass(&["det", "--kernel", "gaussian", "--zeta", "1", "--nodes", "64"]);
    assert!(o.status.success());
    let (h, rows) = csv_rows(&o);
    assert_eq!(h, ["zeta", "left", "right", "nodes", "log_det", "det"]);
    let det: f64 = rows[0][5].parse().unwrap();
    let want = 1.0 - std::f64::consts::PI.sqrt() / 2.0 * (1.0 - erf(1.0));
    assert!((det - want).abs() <= 1e-10);
}

#[test]
fn zero_coupling_gives_unit_determinant() {
    let o = zclass(&["det", "--kernel", "sine", "--gamma", "0", "--zeta", "2"]);
    assert!(o.status.success());
    let (_, rows) = csv_rows(&o);
    assert_eq!(rows[0][5].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn floats_carry_seventeen_digits() {
    let o = zclass(&["det", "--kernel", "sine", "--gamma", "0.5", "--zeta-grid", "0.5:1.5:0.5"]);
    let (_, rows) = csv_rows(&o);
    assert_eq!(rows.len(), 3);
    for cell in &rows[1] {
        if cell.contains('e') {
            let mantissa = cell.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17, "{cell}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(zclass(&["det", "--kernel", "nope", "--zeta", "1"]).status.code(), Some(2));
    assert_eq!(zclass(&["det", "--kernel", "sine"]).status.code(), Some(2));
    assert_eq!(zclass(&["frobnicate"]).status.code(), Some(2));
    let o = zclass(&["det", "--kernel", "gaussian", "--zeta=-8", "--b", "8"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("determinant sign undefined"));
    assert_eq!(zclass(&["sigma", "--kernel", "airy", "--zeta", "1"]).status.code(), Some(2));
    assert_eq!(zclass(&["verify", "--only", "A99"]).status.code(), Some(2));
}

#[test]
fn fixed_headers_with_split_complex_columns() {
    let cases: [(&[&str], usize); 6] = [
        (&["sigma", "--gamma", "0.5", "--zeta", "1"], 17),
        (&["density", "--gamma", "0.5", "--b", "1", "--nodes", "32", "--fd-nodes", "24"], 18),
        (&["monodromy", "--gamma", "0.5", "--z", "0,2", "--nodes", "32", "--steps", "500"], 13),
        (&["diz", "--zeta-grid", "0.2:0.3:0.02", "--nodes", "32"], 4),
        (&["diag", "--alpha", "0.7", "--degree", "2"], 8),
        (&["cd", "--kernel", "airy", "--x", "0,1", "--t", "1"], 5),
    ];
    for (args, width) in cases {
        let o = zclass(args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let (h, rows) = csv_rows(&o);
        assert_eq!(h.len(), width, "{args:?}");
        assert!(!rows.is_empty() && rows.iter().all(|r| r.len() == width));
        let re = h.iter().filter(|c| c.ends_with("_re")).count();
        assert_eq!(re, h.iter().filter(|c| c.ends_with("_im")).count());
    }
}

#[test]
fn json_rows_and_out_path() {
    let dir = std::env::temp_dir().join(format!("zclass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let modulus = dir.join("modulus.csv");
    std::fs::write(&modulus, "x,R\n0,1\n0.5,2.718281828459045\n1,1\n").unwrap();
    let out = dir.join("w.json");
    let o = zclass(&["outer", "--modulus", modulus.to_str().unwrap(), "--z", "0.5,1", "--z", "2,-1", "--json", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert!(v[0]["abs_w"].as_f64().unwrap() >= v[0]["zero_free_bound"].as_f64().unwrap());

    std::fs::write(&modulus, "x,R\n0,1\n0.5,0.5\n").unwrap();
    let o = zclass(&["outer", "--modulus", modulus.to_str().unwrap(), "--z", "0.5,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 2"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn jump_table_contracts() {
    let o = zclass(&["jump", "--gamma", "0.25", "--x", "1", "--eps", "1e-1,1e-2", "--nodes", "64"]);
    assert!(o.status.success());
    let (h, rows) = csv_rows(&o);
    assert_eq!(h, ["x", "eps", "residual", "ratio"]);
    assert_eq!(rows[0][3], "");
    assert!(rows[1][3].parse::<f64>().unwrap() <= 0.6);
}

#[test]
fn verify_report_schema_and_determinism() {
    let first = zclass(&["verify"]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    let second = zclass(&["verify", "--json"]);
    assert_eq!(first.stdout, second.stdout);

    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    let obj = v.as_object().unwrap();
    assert_eq!(obj.keys().collect::<Vec<_>>(), ["suite", "provenance"]);
    let suite = v["suite"].as_array().unwrap();
    for e in suite {
        let keys: Vec<_> = e.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["name", "passed", "measured", "tolerance", "details"]);
        assert!(e["name"].is_string() && e["details"].is_string());
        assert_eq!(e["passed"], Value::Bool(true));
        assert!(e["measured"].is_number() && e["tolerance"].is_number());
    }
    for id in 1..=13 {
        let prefix = format!("A{id} ");
        assert!(suite.iter().any(|e| e["name"].as_str().unwrap().starts_with(&prefix)), "{prefix}");
    }
    let prov = &v["provenance"];
    for key in ["profile", "n", "steps", "truncation", "versions"] {
        assert!(!prov[key].is_null(), "{key}");
    }
    assert!(suite.iter().any(|e| e["details"].as_str().unwrap().contains("adopted: bessel_sqrtarg")));
}

#[test]
fn verify_subset() {
    let o = zclass(&["verify", "--only", "A2,A13"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"].as_array().unwrap().len(), 7);
}
