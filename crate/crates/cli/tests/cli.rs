use std::path::PathBuf;
use std::process::{Command, Output};

use modinv::gfq::FieldParams;
use modinv::mvpoly::Poly;

fn modinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modinv"))
        .args(args)
        .env_remove("MODINV_Q")
        .env_remove("MODINV_M")
        .env_remove("MODINV_ALPHA")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn dickson_values() {
    let o = modinv(&["dickson", "--q", "2", "--n", "2", "--i", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "x1^2 + x1*x2 + x2^2");
    assert_eq!(stdout(&modinv(&["dickson", "--q", "3", "--n", "2", "--i", "2"])).trim(), "1");
    assert_eq!(stdout(&modinv(&["dickson", "--q", "3", "--n", "2", "--i", "-1"])).trim(), "0");
}

#[test]
fn series_and_orbits() {
    assert_eq!(stdout(&modinv(&["series", "--alpha", "1", "--m", "2", "--q", "2"])).trim(), "1 + t + t^2 + t^3");
    let json = scratch("series.json");
    let o = modinv(&["series", "--alpha", "2", "--m", "2", "--q", "2", "--json", json.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["total"], "5");
    assert_eq!(stdout(&modinv(&["orbits", "--alpha", "2", "--m", "2", "--q", "2"])).trim(), "5");
}

#[test]
fn verify_commands_exit_zero() {
    for args in [
        &["verify", "hilbert", "--alpha", "2,1", "--m", "2", "--q", "2"][..],
        &["verify", "basis", "--alpha", "1,2", "--m", "2", "--q", "3"],
        &["verify", "filtration", "--n", "3", "--k", "1", "--m", "2", "--q", "2"],
        &["verify", "identities", "--q", "2", "--m", "3"],
    ] {
        let o = modinv(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn usage_errors_and_work_bound_exit_two() {
    let o = modinv(&["verify", "basis", "--alpha", "3", "--m", "4", "--q", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("work bound"));
    assert_eq!(modinv(&["series", "--alpha", "1", "--m", "2", "--q", "6"]).status.code(), Some(2));
    assert_eq!(modinv(&["verify", "basis", "--alpha", "1,1,1,1", "--m", "2", "--q", "2"]).status.code(), Some(2));
    assert_eq!(modinv(&["series", "--alpha", "2", "--n", "3", "--m", "2", "--q", "2"]).status.code(), Some(2));
    assert_eq!(modinv(&["orbits", "--m", "2", "--q", "2"]).status.code(), Some(2));
    assert_eq!(modinv(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn csv_has_one_row_per_degree() {
    let csv = scratch("basis.csv");
    let o = modinv(&["verify", "basis", "--alpha", "2", "--m", "2", "--q", "2", "--csv", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "degree,conjecture,bruteforce,basis_count,match");
    // Degrees 0 ..= 2(q^m - 1).
    assert_eq!(lines.len(), 1 + 7);
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
}

#[test]
fn basis_dump_round_trips() {
    let json = scratch("dump.json");
    let o = modinv(&["basis-dump", "--alpha", "2,1", "--m", "2", "--q", "3", "--json", json.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let field = FieldParams::of_order(3).unwrap();
    let elements = v["elements"].as_array().unwrap();
    let total = stdout(&modinv(&["series", "--alpha", "2,1", "--m", "2", "--q", "3", "--json", "-"]));
    let total: serde_json::Value = serde_json::from_str(total.split_once('\n').unwrap().1).unwrap();
    assert_eq!(elements.len().to_string(), total["total"].as_str().unwrap());
    for e in elements {
        let text = e["poly"].as_str().unwrap();
        let p = Poly::parse(text, &field, 3).unwrap();
        assert_eq!(p.to_string(), text);
        assert_eq!(p.degree().map(u64::from), e["degree"].as_u64());
    }
}

#[test]
fn config_file_and_env_precedence() {
    let cfg = scratch("run.cfg");
    std::fs::write(&cfg, "# defaults\nq = 2\nm = 2\nalpha = 1\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(stdout(&modinv(&["series", "--config", c])).trim(), "1 + t + t^2 + t^3");
    let o = Command::new(env!("CARGO_BIN_EXE_modinv")).args(["series", "--config", c]).env("MODINV_M", "1").output().unwrap();
    assert_eq!(stdout(&o).trim(), "1 + t");
    assert_eq!(stdout(&modinv(&["series", "--config", c, "--alpha", "2"])).trim(), "1 + t^2 + t^3 + t^4 + t^6");
    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(modinv(&["series", "--config", c]).status.code(), Some(2));
}
