use std::process::{Command, Output};

fn sfx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sfx"))
        .args(args)
        .env_remove("SFX_TOLERANCE")
        .output()
        .expect("sfx runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn parse_pair(s: &str) -> (f64, f64) {
    let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
    let (re, im) = inner.split_once(", ").unwrap();
    (re.parse().unwrap(), im.parse().unwrap())
}

#[test]
fn eval_examples() {
    let o = sfx(&["eval", "jacobi", "--n", "2", "--alpha", "1", "--beta", "1", "--x", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_pair(&stdout(&o)), (-0.75, 0.0));
    let o = sfx(&["eval", "sfun", "--r", "1", "--n", "0", "--a", "1,1", "--b", "1,1", "--x", "0"]);
    assert_eq!(parse_pair(&stdout(&o)), (1.0, 0.0));
    let o = sfx(&["eval", "hahn", "--n", "0", "--a", "0.5", "--b", "0.5", "--c", "0.5", "--d", "0.5", "--x", "0.3"]);
    assert_eq!(parse_pair(&stdout(&o)), (1.0, 0.0));
    let o = sfx(&["eval", "hyper", "--num", "-1,5,2", "--den", "3,4", "--z", "1"]);
    let (re, _) = parse_pair(&stdout(&o));
    assert!((re - 1.0 / 6.0).abs() < 1e-15);
}

#[test]
fn precision_flag_fixes_digits() {
    let o = sfx(&["eval", "jacobi", "--n", "2", "--alpha", "1", "--beta", "1", "--x", "0", "--precision", "4"]);
    assert_eq!(stdout(&o).trim(), "(-0.7500, 0.0000)");
}

#[test]
fn fourier_transform_of_sech_squared() {
    let o = sfx(&["eval", "g", "--n", "0", "--a", "1,1", "--alpha", "0,0", "--xi", "0"]);
    let (re, im) = parse_pair(&stdout(&o));
    assert!((re - 2.0).abs() < 1e-12 && im.abs() < 1e-12);
}

#[test]
fn invalid_input_exits_2() {
    let o = sfx(&["eval", "jacobi", "--n", "2", "--alpha", "-2", "--beta", "1", "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha"));
    let o = sfx(&["eval", "sfun", "--r", "2", "--n", "0", "--a", "1,1", "--b", "1,1", "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = sfx(&["eval", "hyper", "--num", "0.5", "--den", "1", "--z", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(sfx(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(sfx(&["verify", "recurrence", "--id", "S1_STAR5"]).status.code(), Some(2));
    assert_eq!(sfx(&["table", "simplex", "--r", "2", "--spacing", "0.3"]).status.code(), Some(2));
    assert_eq!(sfx(&["table", "hahn", "--a", "1", "--b", "1", "--c", "1", "--d", "1", "--step", "0"]).status.code(), Some(2));
}

#[test]
fn verify_recurrence_single_id() {
    let o = sfx(&["verify", "recurrence", "--id", "S1_STAR7", "--samples", "100"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "{\"schema\":1}");
    let passes = lines.iter().filter(|l| l.contains("\"identity_id\":\"S1_STAR7\"") && l.contains("\"passed\":true")).count();
    assert_eq!(passes, 100);
    let summary: serde_json::Value = serde_json::from_str(lines.last().unwrap()).unwrap();
    assert_eq!(summary["summary"]["passed"], 100);
    assert_eq!(summary["summary"]["failed"], 0);
}

#[test]
fn verify_orthogonality_example() {
    let o = sfx(&["verify", "orthogonality", "--r", "2", "--max-degree", "3", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let summary: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    // 10 indices of total degree <= 3, 55 unordered pairs, 10 draws
    assert_eq!(summary["summary"]["total"], 550);
}

#[test]
fn brute_force_report_and_erratum() {
    let o = sfx(&["verify", "recurrence", "--id", "S2_103", "--samples", "20", "--brute-force"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("{\"erratum\":")));
    assert!(text.lines().any(|l| l.starts_with("{\"brute_force\":")));
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sfx"))
        .args(["verify", "numerics", "--samples", "2"])
        .env("SFX_TOLERANCE", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simplex_table_shape() {
    let o = sfx(&["table", "simplex", "--r", "2", "--spacing", "0.1", "--max-degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    // two coordinates plus C(3,2) + C(2,1) + 1 basis columns
    assert_eq!(header.len(), 2 + 6);
    // lattice points k1 + k2 <= 10
    assert_eq!(text.lines().count(), 1 + 66);
}

#[test]
fn hahn_table_shape() {
    let o = sfx(&["table", "hahn", "--max-degree", "3", "--a", "0.5", "--b", "0.7", "--c", "0.5", "--d", "0.7"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 5);
    for l in &lines {
        assert_eq!(l.split(',').count(), 1 + 2 * 4);
    }
}

#[test]
fn table_round_trips_through_eval() {
    let o = sfx(&["table", "g", "--n", "1", "--a", "1,1", "--alpha", "0,0", "--step", "0.5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for row in v["rows"].as_array().unwrap() {
        let x = row[0].as_str().unwrap();
        let g = row[1].as_str().unwrap();
        let e = sfx(&["eval", "g", "--n", "1", "--a", "1,1", "--alpha", "0,0", "--x", x]);
        assert_eq!(stdout(&e).trim(), format!("({g}, 0)"));
    }
}
