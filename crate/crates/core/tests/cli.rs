use lunarlink::scenario::{parse_csv, CSV_HEADER};
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lunarlink")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(|v| v.trim().parse::<f64>().unwrap()))
        .unwrap_or_else(|| panic!("no `{key}` in\n{text}"))
}

#[test]
fn linkbudget_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["linkbudget"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!((value(&text, "t_op_k") - 74.87).abs() < 0.1);
    assert!((value(&text, "p_r_dbw") + 126.9).abs() < 0.1);
    let computed = stdout(&run(&["linkbudget", "--gains", "computed"], dir.path()));
    assert!(computed.contains("computed"));
    assert!((value(&computed, "g_r_dbi") - 49.96).abs() < 0.05);
}

#[test]
fn bound_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let e = stdout(&run(&["bound", "ergodic", "--alpha", "2", "--m", "1", "--gamma-bar", "10"], dir.path()));
    assert!((value(&e, "ergodic_bpcu") - 1.45326).abs() < 1e-4);
    let c = stdout(&run(
        &["bound", "ergodic", "--alpha", "1.5", "--m", "1", "--gamma-bar", "10", "--method", "closed-form"],
        dir.path(),
    ));
    assert!((value(&c, "ergodic_bpcu") - 2.067535088702).abs() < 1e-8);
    let o = stdout(&run(&["bound", "outage", "--alpha", "2", "--m", "1", "--gamma-bar", "10", "--gamma-th-db", "10"], dir.path()));
    assert!((value(&o, "outage_ub") - (1.0 - (-1f64).exp())).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["linkbudget", "--no-such-flag"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["linkbudget", "--band", "X"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--alphas", "0.5"], dir.path()).status.code(), Some(2));
    let bad = dir.path().join("bad.conf");
    std::fs::write(&bad, "colour = blue\n").unwrap();
    assert_eq!(run(&["linkbudget", "--config", bad.to_str().unwrap()], dir.path()).status.code(), Some(2));
}

#[test]
fn literal_moon_divisor_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["linkbudget", "--literal-moon-divisor"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dimensionally inconsistent"));
    let conf = dir.path().join("lit.conf");
    std::fs::write(&conf, "literal_moon_divisor = true\n").unwrap();
    assert_eq!(run(&["linkbudget", "--config", conf.to_str().unwrap()], dir.path()).status.code(), Some(2));
}

#[test]
fn command_line_overrides_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "band = S\nd = 7e7\ngains = computed\n").unwrap();
    let c = conf.to_str().unwrap();
    let from_file = stdout(&run(&["linkbudget", "--config", c], dir.path()));
    assert!(from_file.contains("band             S"));
    assert!(from_file.contains("computed"));
    let overridden = stdout(&run(&["linkbudget", "--config", c, "--band", "Ka", "--gains", "table"], dir.path()));
    assert!(overridden.contains("band             Ka"));
    assert!(overridden.contains("table"));
}

#[test]
fn sweep_writes_csv_and_charts() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["sweep", "--bands", "S", "--t-b-grid", "0:100:300", "--distances", "1e7", "--p-ts", "1", "--out", "res"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("res/sweep.csv")).unwrap();
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    assert!(text.contains("# gains = table"));
    assert_eq!(parse_csv(&text).unwrap().len(), 4 * 9);
    assert!(dir.path().join("res/sweep_S_d1e7_pt1e0_capacity.svg").exists());
    assert!(dir.path().join("res/sweep_S_d1e7_pt1e0_outage.svg").exists());
}

#[test]
fn ba_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["ba", "--alphas", "1.9", "--n-h", "8", "--n-x", "33", "--n-y", "257", "--out", "res"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("res/ba.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("alpha,m,p_c,lambda_n,gamma_bar,ba_bpcu,bound_bpcu,gap_bpcu"));
    let cols: Vec<f64> = lines.next().unwrap().split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(cols.len(), 8);
    assert!(cols[5] > cols[6], "BA below bound: {cols:?}");
}

#[test]
fn validate_csv_format_and_small_sample_rejection() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["validate", "--n-samples", "100"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["validate", "--n-samples", "200000", "--format", "csv", "--seed", "7"], dir.path());
    let text = stdout(&o);
    assert!(text.starts_with("check,passed,detail\n"));
    assert!(text.lines().count() > 40);
}
