use std::io::Write;
use std::process::{Command, Output};

fn abfib(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abfib"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_ring_v_passes() {
    let o = abfib(&["verify", "ring-V"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("PASS H*H*H = 16[pt]"));
    assert!(s.ends_with("  result: pass\n"));
}

#[test]
fn verify_fm_matrix_passes() {
    let o = abfib(&["fm", "verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS reconstruction = printed s_P"));
}

#[test]
fn unknown_suite_is_usage_error() {
    let o = abfib(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn bad_flag_is_usage_error() {
    assert_eq!(abfib(&["search", "--bogus"]).status.code(), Some(2));
}

#[test]
fn corrupted_model_file_fails_verification() {
    let text = abfib::ring::v()
        .to_model_file()
        .replace("mul H l = [pt]", "mul H l = 2[pt]");
    let mut f = tempfile();
    f.1.write_all(text.as_bytes()).unwrap();
    let o = abfib(&["--model-file", f.0.to_str().unwrap(), "verify", "all"]);
    assert_eq!(o.status.code(), Some(4));
    let s = stdout(&o);
    assert!(
        s.contains("FAIL H*l = [pt]: got 2[pt], expected [pt]"),
        "{s}"
    );
    assert!(s.contains("result: fail (first failing check: ring-V:"));
    std::fs::remove_file(&f.0).ok();
}

#[test]
fn malformed_model_file_reports_line() {
    let mut f = tempfile();
    f.1.write_all(b"model X topdeg 2\nbasis one 0\nbogus line\n")
        .unwrap();
    let o = abfib(&["--model-file", f.0.to_str().unwrap(), "models"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    std::fs::remove_file(&f.0).ok();
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static N: AtomicUsize = AtomicUsize::new(0);
    let path = std::env::temp_dir().join(format!(
        "abfib-test-{}-{}.model",
        std::process::id(),
        N.fetch_add(1, Ordering::SeqCst)
    ));
    let f = std::fs::File::create(&path).unwrap();
    (path, f)
}

#[test]
fn fm_apply_golden() {
    let o = abfib(&["fm", "apply", "--class", "[e] + [pt]"]);
    assert_eq!(
        stdout(&o),
        "fm:\n  direction: forward\n  source: [e] + [pt]\n  image: [V^]\n  expected_columns_used: []\n"
    );
    let o = abfib(&["fm", "apply", "--inverse", "--class", "[V^]"]);
    assert!(stdout(&o).contains("image: [e] + [pt]\n"));
}

#[test]
fn fm_apply_verified_only_refuses_expected_columns() {
    let o = abfib(&["fm", "apply", "--verified-only", "--class", "[V]"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unverified"));
}

#[test]
fn chern_table_in_order() {
    let s = stdout(&abfib(&["chern", "table"]));
    let names = ["O_A:", "O_e:", "O_pt:", "O_A(H):", "O_V:", "O_V(H):"];
    let pos: Vec<usize> = names.iter().map(|n| s.find(n).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    assert!(s.contains("ch: [V] + [H] + 8[e] + 8[l] + 8/3[pt]"));
    assert!(s.contains("ch_sp: 8[V^] - [H^] + [e^] + 8[E^] - 1/3[pt]"));
}

#[test]
fn chern_ci_golden() {
    let s = stdout(&abfib(&["chern", "ci", "--ambient", "4", "--degrees", "5"]));
    assert!(s.contains("c2: 10 h^2\n"));
    assert!(s.contains("euler: -200\n"));
}

#[test]
fn search_exit_codes() {
    let o = abfib(&[
        "search",
        "--rank",
        "5",
        "--c3",
        "6",
        "--b-range",
        "0:4",
        "--chi-range",
        "-4:4",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let s = stdout(&o);
    assert!(s.contains("total: 45\n"));
    assert!(s.contains("statement: c3 ≡ 0"));
    let o = abfib(&[
        "search",
        "--rank",
        "4",
        "--c3",
        "0",
        "--anomaly",
        "ignore",
        "--b-range",
        "0:1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("feasible:\n    - (4, 0, 4)\n    - (4, 1, 4)\n"));
}

#[test]
fn search_empty_range_is_usage_error() {
    let o = abfib(&["search", "--rank", "4", "--c3", "6", "--b-range", "3:1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn stability_golden() {
    let s = stdout(&abfib(&["stability", "ample", "--l", "1", "--k", "0"]));
    assert_eq!(
        s,
        "ample:\n  divisor: [H^]\n  ample: false\n  degree_on_e^: 0\n  degree_on_l^: 8\n  witness: e^\n"
    );
    let s = stdout(&abfib(&[
        "stability",
        "threshold",
        "--a",
        "160",
        "--mu",
        "0",
        "--n",
        "4",
    ]));
    assert!(s.contains("k: 241\n"));
}

#[test]
fn lattice_golden() {
    let s = stdout(&abfib(&["lattice", "cone", "--height", "2"]));
    assert_eq!(
        s,
        "cone:\n  height: 2\n  count: 6\n  generators:\n    - [-1:2:2]\n    - [0:0:1]\n    - [0:1:0]\n    - [1:0:0]\n    - [2:-1:2]\n    - [2:2:-1]\n"
    );
    let s = stdout(&abfib(&["lattice", "orbit", "--height", "4"]));
    assert!(s.contains("missed: []\n"));
    let s = stdout(&abfib(&["lattice", "schwarz", "--height", "3"]));
    assert!(s.contains("violations: []\n"));
}

#[test]
fn json_format_is_structured() {
    let s = stdout(&abfib(&[
        "--format",
        "json",
        "stability",
        "ample",
        "--l",
        "1",
        "--k",
        "1",
    ]));
    assert!(s.starts_with("{\n  \"ample\": {\n"));
    assert!(s.contains("\"ample\": \"true\""));
}

#[test]
fn timestamp_is_opt_in() {
    let plain = stdout(&abfib(&["lattice", "cone", "--height", "1"]));
    assert!(!plain.contains("timestamp"));
    let stamped = stdout(&abfib(&["--timestamp", "lattice", "cone", "--height", "1"]));
    assert!(stamped.starts_with("output:\n  timestamp: "));
}

#[test]
fn models_lists_builtins() {
    let s = stdout(&abfib(&["models"]));
    for name in ["V:", "Vdual:", "S:", "ExE:"] {
        assert!(s.contains(name));
    }
    assert!(s.contains("basis: V (0), H (2), A (2), e (4), l (4), pt (6)"));
}
