use std::path::Path;
use std::process::{Command, Output};

use h3euler::strata::{default_strata_text, STRATA_FILE_ENV};

fn h3euler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_h3euler"))
        .args(args)
        .env_remove(STRATA_FILE_ENV)
        .output()
        .expect("run binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

/// The bundled strata file with stratum 1's Euler number bumped from −1 to 0.
fn strata_with_euler_sum_two() -> String {
    let text = default_strata_text();
    let bad = text.replacen("euler = -1", "euler = 0", 1);
    assert_ne!(bad, text);
    bad
}

#[test]
fn euler_values() {
    let o = h3euler(&["euler", "--lambda", "9,1,0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-22\n");
    assert_eq!(stdout(&h3euler(&["euler", "--lambda", "(0,0,0)"])), "1\n");
    let o = h3euler(&["euler", "--lambda", "0,0,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert_eq!(h3euler(&["euler", "--lambda", "1,2"]).status.code(), Some(1));
}

#[test]
fn table_reproduces_fixture() {
    let o = h3euler(&["table", "--max-weight", "10", "--format", "csv"]);
    assert!(o.status.success());
    let fixture = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/table4.csv")).unwrap();
    assert_eq!(stdout(&o), fixture);
    assert_eq!(stdout(&o).lines().count(), 39);
}

#[test]
fn table_small_weights() {
    let o = h3euler(&["table", "--max-weight", "4", "--format", "csv"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines.last().unwrap(), "2,1,1,0");
    let o = h3euler(&["table", "--max-weight", "0", "--format", "csv"]);
    assert_eq!(stdout(&o), "l1,l2,l3,e_c\n0,0,0,1\n");
}

#[test]
fn json_is_byte_stable() {
    let a = h3euler(&["table", "--max-weight", "6", "--format", "json"]);
    let b = h3euler(&["table", "--max-weight", "6", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v[0]["lambda"], serde_json::json!([0, 0, 0]));
    assert_eq!(v.as_array().unwrap().len(), 14);
}

#[test]
fn invariants_values() {
    assert_eq!(stdout(&h3euler(&["invariants", "--stratum", "1", "--lambda", "2,0,0"])), "21\n");
    assert_eq!(stdout(&h3euler(&["invariants", "--stratum", "11", "--lambda", "0,0,0"])), "1\n");
    assert_eq!(h3euler(&["invariants", "--stratum", "12", "--lambda", "0,0,0"]).status.code(), Some(1));
}

#[test]
fn ffcheck_rows() {
    let o = h3euler(&["ffcheck", "--q", "3", "--lambda", "0,0,0", "--lambda", "3,1,0", "--lambda", "6,0,0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,l1,l2,l3,raw_sum,divisor,trace_sum,expected,status");
    assert_eq!(lines[1], "3,0,0,0,11664,48,243,243,PASS");
    assert!(lines[2].ends_with(",8,8,PASS"), "{}", lines[2]);
    assert!(lines[3].ends_with(",n/a,n/a"), "{}", lines[3]);
    assert_eq!(h3euler(&["ffcheck", "--q", "7"]).status.code(), Some(1));
}

#[test]
fn ffcheck_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("q3.he3c");
    let cache = cache.to_str().unwrap();
    let first = h3euler(&["ffcheck", "--q", "3", "--cache", cache, "--format", "json"]);
    assert!(first.status.success());
    assert!(String::from_utf8_lossy(&first.stderr).contains("wrote 11664 curves"));
    let second = h3euler(&["ffcheck", "--q", "3", "--cache", cache, "--format", "json"]);
    assert!(String::from_utf8_lossy(&second.stderr).contains("read 11664 curves"));
    assert_eq!(first.stdout, second.stdout);
    // a q = 3 cache cannot serve q = 5
    assert_eq!(h3euler(&["ffcheck", "--q", "5", "--cache", cache]).status.code(), Some(2));
    let mut bytes = std::fs::read(cache).unwrap();
    bytes[4] = 9;
    std::fs::write(cache, &bytes).unwrap();
    let o = h3euler(&["ffcheck", "--q", "3", "--cache", cache]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("version"));
}

#[test]
fn verify_fresh_checkout() {
    let o = h3euler(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    for name in ["Table-2 sum", "|Y_i| = #G_i/4", "Phi_336", "determinant oracle", "Table 4 golden", "L=1 consistency"] {
        assert!(text.contains(name), "{name}");
    }
}

#[test]
fn verify_seeded_euler_sum_fault() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "strata.toml", &strata_with_euler_sum_two());
    let o = h3euler(&["verify", "--strata-file", &path]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("FAIL  Table-2 sum")), "{text}");
    assert!(text.contains("sum to 2"));
}

#[test]
fn verify_seeded_table5_fault() {
    let dir = tempfile::tempdir().unwrap();
    let text = h3euler::ffcount::render_table5(&h3euler::ffcount::table5()).replace("4,0,0: L^2 - 2", "4,0,0: L^2 - 3");
    let path = write(dir.path(), "table5.txt", &text);
    let o = h3euler(&["verify", "--table5-file", &path]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    let fails: Vec<&str> = out.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails.len(), 1, "{out}");
    assert!(fails[0].starts_with("FAIL  L=1 consistency"));
}

#[test]
fn strata_file_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.toml", default_strata_text());
    let o = Command::new(env!("CARGO_BIN_EXE_h3euler"))
        .args(["euler", "--lambda", "8,2,0"])
        .env(STRATA_FILE_ENV, &good)
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "-43\n");

    let bad = write(dir.path(), "bad.toml", &strata_with_euler_sum_two());
    let o = Command::new(env!("CARGO_BIN_EXE_h3euler"))
        .args(["euler", "--lambda", "8,2,0"])
        .env(STRATA_FILE_ENV, &bad)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Table-2 sum"));

    let o = Command::new(env!("CARGO_BIN_EXE_h3euler"))
        .arg("verify")
        .env(STRATA_FILE_ENV, &bad)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
