use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgexpander"))
        .args(args)
        .env_remove("PGEXPANDER_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid json line"))
        .collect()
}

#[test]
fn geom_info_reports_cardinalities() {
    let o = run(&["geom", "info"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("63 points, 63 hyperplanes"), "{s}");
    assert!(s.contains("1395 planes"), "{s}");
    let v = &json_lines(&run(&["--format", "json-lines", "geom", "info", "--d", "3"]))[0];
    assert_eq!(v["points"], 15);
    assert_eq!(v["planes"], 15);
}

#[test]
fn bounds_table_row() {
    let o = run(&["bounds", "table"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let row = s.lines().find(|l| l.trim_start().starts_with("9 ")).unwrap();
    assert!(row.contains("0.74 0.48 24"), "{row}");
    let rows = json_lines(&run(&["--format", "json-lines", "bounds", "table"]));
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[6]["zemor_bound"], 65);
    assert!(rows[0]["zemor_bound"].is_null());
}

#[test]
fn graph_spectrum_and_export() {
    let v = &json_lines(&run(&["--format", "json-lines", "graph", "spectrum"]))[0];
    assert_eq!(v["second_eigenvalue"], 4.0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edges.txt");
    assert!(run(&["graph", "export", "--out", path.to_str().unwrap()]).status.success());
    assert_eq!(fs::read_to_string(path).unwrap().lines().count(), 1953);
}

#[test]
fn small_random_simulation_has_no_failures() {
    let o = run(&[
        "--format", "json-lines", "sim", "random", "--epsilon", "5", "--weight", "50", "--rounds", "1000",
        "--seed", "1",
    ]);
    assert!(o.status.success());
    let v = &json_lines(&o)[0];
    assert_eq!(v["failures_pct"], 0.0);
    for key in ["epsilon", "model", "weight", "rounds", "seed", "avg_iterations", "miscorrections"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn seed_comes_from_environment() {
    let args = ["--format", "json-lines", "sim", "burst", "-e", "5", "--weight", "135", "--rounds", "50"];
    let with_env = Command::new(env!("CARGO_BIN_EXE_pgexpander"))
        .args(args)
        .env("PGEXPANDER_SEED", "7")
        .output()
        .unwrap();
    let explicit = run(&[&args[..], &["--seed", "7"]].concat());
    assert_eq!(json_lines(&with_env)[0]["seed"], 7);
    assert_eq!(stdout(&with_env), stdout(&explicit));
}

#[test]
fn invalid_flags_fail_with_one_line() {
    for args in [
        &["sim", "random", "--epsilon", "4", "--weight", "10"][..],
        &["bounds", "search", "--p", "x", "--delta", "3"][..],
        &["frobnicate"][..],
    ] {
        let o = run(args);
        assert!(!o.status.success(), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn malformed_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.hex");
    fs::write(&path, "zz\n").unwrap();
    let o = run(&["code", "decode", "-e", "5", "--in", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["code", "decode", "-e", "5", "--in", "/nonexistent/file"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn planted_pattern_fails_and_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("planted.hex");
    let o = run(&["plant", "-e", "5", "--plane-id", "3", "--seed", "2", "--out", word.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 9);
    let o = run(&["--format", "json-lines", "code", "decode", "-e", "5", "--in", word.to_str().unwrap()]);
    // a decoding failure is data, not an error
    assert!(o.status.success());
    let v = &json_lines(&o)[0];
    assert_eq!(v["success"], false);
    assert_eq!(v["iterations_used"], 4);
    assert_eq!(v["per_iteration"].as_array().unwrap().len(), 8);
}

#[test]
fn encode_then_decode_with_errors_and_erasures() {
    let dir = tempfile::tempdir().unwrap();
    let build = json_lines(&run(&["--format", "json-lines", "code", "build", "-e", "7"]));
    let k = build[0]["k"].as_u64().unwrap() as usize;
    assert_eq!(k, 1197);

    let msg: String = (0..k).map(|i| format!("{:02x}", (i * 37 + 11) % 256)).collect();
    let msg_path = dir.path().join("msg.hex");
    let cw_path = dir.path().join("cw.hex");
    fs::write(&msg_path, format!("{msg}\n")).unwrap();
    let o = run(&["code", "encode", "-e", "7", "--in", msg_path.to_str().unwrap(), "--out", cw_path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let codeword = fs::read_to_string(&cw_path).unwrap().trim().to_string();
    assert_eq!(codeword.len(), 3906);

    let mut bytes: Vec<u8> = (0..1953)
        .map(|i| u8::from_str_radix(&codeword[2 * i..2 * i + 2], 16).unwrap())
        .collect();
    for i in [0usize, 100, 700, 1500] {
        bytes[i] ^= 0x3c;
    }
    let erased = [5u32, 64, 1000];
    for &l in &erased {
        bytes[l as usize - 1] = 0;
    }
    let rx: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
    let rx_path = dir.path().join("rx.hex");
    let er_path = dir.path().join("erasures.txt");
    fs::write(&rx_path, format!("{rx}\n")).unwrap();
    fs::write(&er_path, erased.iter().map(|l| format!("{l}\n")).collect::<String>()).unwrap();
    let o = run(&[
        "--format", "json-lines", "code", "decode", "-e", "7", "--in", rx_path.to_str().unwrap(), "--erasures",
        er_path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v = &json_lines(&o)[0];
    assert_eq!(v["success"], true);
    assert_eq!(v["final_word"], codeword.as_str());
}

#[test]
fn component_codec_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let msg_path = dir.path().join("m.hex");
    fs::write(&msg_path, format!("{}\n", "ab".repeat(27))).unwrap();
    let o = run(&["rs", "encode", "-e", "5", "--in", msg_path.to_str().unwrap()]);
    assert!(o.status.success());
    let cw = stdout(&o).trim().to_string();
    assert_eq!(cw.len(), 62);
    let mut rx = cw.clone().into_bytes();
    rx[10] = if rx[10] == b'0' { b'1' } else { b'0' };
    rx[40..42].copy_from_slice(b"00");
    let rx_path = dir.path().join("r.hex");
    fs::write(&rx_path, format!("{}\n", String::from_utf8(rx).unwrap())).unwrap();
    let o = run(&["--format", "json-lines", "rs", "decode", "-e", "5", "--in", rx_path.to_str().unwrap(), "--erasures", "20"]);
    let v = &json_lines(&o)[0];
    assert_eq!(v["status"], "Corrected");
    assert_eq!(v["word"], cw.as_str());
}

#[test]
fn search_and_lemmas() {
    let v = &json_lines(&run(&["--format", "json-lines", "bounds", "search", "--p", "9", "--delta", "8"]))[0];
    assert_eq!(v["status"], "NotFound");
    let v = &json_lines(&run(&["--format", "json-lines", "bounds", "search", "--p", "3", "--delta", "3"]))[0];
    assert_eq!(v["status"], "Found");
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
    let o = run(&["bounds", "search", "--p", "11", "--delta", "8", "--budget", "100"]);
    assert!(stdout(&o).contains("Timeout after 100 nodes"));
    let o = run(&["--format", "json-lines", "lemmas"]);
    assert!(o.status.success());
    assert!(json_lines(&o).iter().all(|v| v["holds"] == true));
}

#[test]
fn help_goes_to_stdout() {
    let o = run(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("sim"));
}
