use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn flowinc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flowinc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("flowinc-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn read(dir: &Path, f: &str) -> String {
    std::fs::read_to_string(dir.join(f)).unwrap()
}

#[test]
fn tangent_scan_table() {
    let o = flowinc(&["tangent-scan", "--n-range", "1..3", "--precision", "20"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["N", "curves", "tangent_pairs", "ratio_4_3", "ratio_3_2"]);
    let counts: Vec<(&str, &str, &str)> = rows[1..].iter().map(|r| (r[0], r[1], r[2])).collect();
    assert_eq!(counts, [("1", "8", "4"), ("2", "135", "265"), ("3", "1120", "5424")]);
    assert_eq!(rows[1][3], "0.25000000000000000000");
}

#[test]
fn exit_codes() {
    assert_eq!(flowinc(&["tangent-scan", "--n-range", "1,41"]).status.code(), Some(3));
    assert_eq!(flowinc(&["n7-grid", "--n-range", "17"]).status.code(), Some(3));
    assert_eq!(flowinc(&["tangent-scan"]).status.code(), Some(2));
    assert_eq!(flowinc(&["square-sieve", "--n-range", "3,2"]).status.code(), Some(2));
    assert_eq!(flowinc(&["tangent-scan", "--n-range", "1", "--precision", "10"]).status.code(), Some(2));
    assert_eq!(flowinc(&["gen", "--family", "nonsense:n=1"]).status.code(), Some(2));
    assert_eq!(flowinc(&["fit", "--series", "1:1"]).status.code(), Some(2));
}

#[test]
fn output_files_are_reproducible() {
    let args = |d: &Path| {
        vec![
            "incidences".to_string(),
            "--family".into(),
            "heisenberg_x:u=[0,1],v=[0,1]".into(),
            "--family".into(),
            "heisenberg_y:slope=[0,1],intercept=[0,1]".into(),
            "--workers".into(),
            "3".into(),
            "--out".into(),
            d.to_str().unwrap().into(),
        ]
    };
    let (a, b) = (scratch("rep-a"), scratch("rep-b"));
    for d in [&a, &b] {
        let o = Command::new(env!("CARGO_BIN_EXE_flowinc")).args(args(d)).output().unwrap();
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
    for f in ["incidences.csv", "incidences.json"] {
        assert_eq!(read(&a, f), read(&b, f), "{f}");
    }
    let csv = read(&a, "incidences.csv");
    assert!(csv.starts_with("id1,id2,point,tangential\n"));
    assert_eq!(csv.lines().count(), 8);
    let json: serde_json::Value = serde_json::from_str(&read(&a, "incidences.json")).unwrap();
    assert!(json.is_object());
    for d in [a, b] {
        std::fs::remove_dir_all(d).unwrap();
    }
}

#[test]
fn gen_writes_json_lines() {
    let d = scratch("gen");
    let o = flowinc(&["gen", "--family", "parabola_grid:n=1", "--out", d.to_str().unwrap()]);
    assert!(o.status.success());
    let body = read(&d, "curves.jsonl");
    assert_eq!(body.lines().count(), 8);
    for l in body.lines() {
        serde_json::from_str::<serde_json::Value>(l).unwrap();
    }
    std::fs::remove_dir_all(d).unwrap();
}

#[test]
fn bounds_json() {
    let o = flowinc(&["bounds", "--lines", "8", "--l1", "8", "--l2", "8", "--dim", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["joints_rhs"].as_str().unwrap().starts_with("22.627416997969520780"));
    assert!(v["multijoint_rhs"].as_str().unwrap().starts_with("32.000000"));
}

#[test]
fn config_file_and_flag_precedence() {
    let d = scratch("cfg");
    let cfg = d.join("run.toml");
    std::fs::write(&cfg, "command = \"square-sieve\"\nscale = [1, 2, 3]\ndigits = 16\n").unwrap();
    let o = flowinc(&["square-sieve", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert_eq!(out.lines().nth(1).unwrap(), "1,3,3.0000000000000000");
    let o = flowinc(&["square-sieve", "--config", cfg.to_str().unwrap(), "--n-range", "4"]);
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("4,"));
    assert_eq!(flowinc(&["tangent-scan", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&cfg, "command = \"square-sieve\"\nbogus = 1\n").unwrap();
    assert_eq!(flowinc(&["square-sieve", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(d).unwrap();
}
