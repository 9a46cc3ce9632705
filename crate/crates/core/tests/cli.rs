use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn swipt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swipt")).args(args).output().unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn header(csv: &str) -> Vec<String> {
    csv.lines().nth(1).unwrap().split(',').map(str::to_string).collect()
}

#[test]
fn simulate_defaults_csanc() {
    let out = swipt(&["simulate", "--protocol", "csanc", "--trials", "1000000"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        header(&csv),
        [
            "protocol", "P_B_dBm", "op_N", "op_F", "sop", "ci_N", "ci_F", "ci_sop", "failures_N", "failures_F",
            "failures_sys", "trials", "seed"
        ]
    );
    let row = &data_rows(&csv)[0];
    let op_n: f64 = row[2].parse().unwrap();
    let ci: f64 = row[5].parse().unwrap();
    // closed form: 2.0832e-4
    assert!((op_n - 2.0832e-4).abs() < 3.0 * ci, "{op_n} +/- {ci}");
    assert_eq!(row[11], "1000000");
}

#[test]
fn comment_line_records_hash_and_seed() {
    let out = swipt(&["simulate", "--protocol", "isaoc", "--trials", "1000", "--seed", "5"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let first = csv.lines().next().unwrap();
    assert!(first.starts_with("# swipt-coop"));
    assert!(first.ends_with("seed=5"));
    let hash = first.split("config_sha256=").nth(1).unwrap().split(' ').next().unwrap();
    assert_eq!(hash.len(), 64);
    assert!(hash.chars().all(|c| c.is_ascii_hexdigit()));
    // low counts at 1000 trials must be flagged
    assert!(String::from_utf8(out.stderr).unwrap().contains("warning:"));
}

#[test]
fn zero_trials_is_a_usage_error() {
    let out = swipt(&["simulate", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_carries_the_same_numbers() {
    let args = ["simulate", "--protocol", "isanc", "--trials", "200000", "--seed", "3"];
    let csv = String::from_utf8(swipt(&args).stdout).unwrap();
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&swipt(&json_args).stdout).unwrap();
    let row = &data_rows(&csv)[0];
    let rec = &json["records"][0];
    for (i, col) in header(&csv).iter().enumerate().skip(2) {
        let from_csv: f64 = row[i].parse().unwrap();
        assert_eq!(rec[col.as_str()].as_f64().unwrap(), from_csv, "{col}");
    }
    assert_eq!(rec["protocol"], "isanc");
}

#[test]
fn config_file_and_validation_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    let base = swipt_coop::config::DEFAULT_TOML;

    fs::write(&cfg, base.replace("total_power_dbm = 20.0", "total_power_dbm = 0.0")).unwrap();
    let out = swipt(&["analytic", "--protocol", "isanc", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows[0][1], "0e0");

    fs::write(&cfg, base.replace("k = \"7/3\"", "k = 1.0")).unwrap();
    let out = swipt(&["analytic", "--protocol", "csanc", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("power_ratio"));
    // k does not constrain the orthogonal protocol
    let out = swipt(&["analytic", "--protocol", "isaoc", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());

    fs::write(&cfg, "[system]\nrate = \"fast\"\n").unwrap();
    assert_eq!(swipt(&["analytic", "--config", cfg.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn bad_axis_and_grid_are_usage_errors() {
    assert_eq!(swipt(&["sweep", "--axis", "eta"]).status.code(), Some(2));
    assert_eq!(swipt(&["sweep", "--axis", "pb", "--grid", "0:10"]).status.code(), Some(2));
    assert_eq!(swipt(&["figure", "--preset", "fig9"]).status.code(), Some(2));
}

#[test]
fn sweep_with_simulation_columns() {
    let out = swipt(&[
        "sweep", "--axis", "pb", "--grid", "0:10:5", "--protocol", "isanc", "--simulate", "--trials", "100000",
    ]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(header(&csv)[0], "P_B_dBm");
    assert!(header(&csv).contains(&"mc_sop".to_string()));
    assert_eq!(data_rows(&csv).len(), 3);
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn fig2_writes_three_panels() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig2");
    let status = swipt(&["figure", "--preset", "fig2", "--trials", "20000", "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    for m in ["sop", "op_f", "op_n"] {
        let csv = read(&out, &format!("fig2_{m}.csv"));
        let h = header(&csv);
        for p in ["csanc", "isanc", "isaoc"] {
            assert!(h.contains(&format!("{p}_analytic")) && h.contains(&format!("{p}_sim")));
        }
        assert_eq!(data_rows(&csv).len(), 9);
    }
}

#[test]
fn fig4_moves_n_along_the_segment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig4");
    assert!(swipt(&["figure", "--preset", "fig4", "--out", out.to_str().unwrap()]).status.success());
    let csv = read(&out, "fig4_sop.csv");
    let sops: Vec<f64> = data_rows(&csv).iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(sops.len(), 6);
    // rises towards the middle of the segment, then falls
    let peak = sops.iter().cloned().fold(0.0, f64::max);
    assert!(sops[0] < peak && sops[5] < peak);
}

#[test]
fn fig5_and_fig6_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out5 = dir.path().join("fig5");
    assert!(swipt(&["figure", "--preset", "fig5", "--out", out5.to_str().unwrap()]).status.success());
    let f = read(&out5, "dmt_F.csv");
    assert!(header(&f).iter().any(|c| c.starts_with("noma_a2")));
    assert!(header(&f).iter().any(|c| c.starts_with("isaoc_theta0.5")));
    let n = read(&out5, "dmt_N.csv");
    assert!(header(&n).contains(&"csanc".to_string()));

    let out6 = dir.path().join("fig6");
    assert!(swipt(&["figure", "--preset", "fig6", "--out", out6.to_str().unwrap()]).status.success());
    let e = read(&out6, "efrc.csv");
    assert_eq!(header(&e), ["k", "csanc_sop", "isanc_sop", "isaoc_rho", "isaoc_best_theta", "isaoc_sop"]);
    let opt = data_rows(&read(&out6, "efrc_optimum.csv"));
    let isanc_grid: f64 = opt[0][5].parse().unwrap();
    let isaoc_grid: f64 = opt[2][5].parse().unwrap();
    assert!((isanc_grid - isaoc_grid).abs() / isanc_grid < 1e-12);
}

#[test]
fn optimize_and_dmt_commands() {
    let out = swipt(&["optimize", "--objective", "efrc", "--protocol", "isanc"]);
    assert!(out.status.success());
    let rows = data_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows[0][1], "2e0");

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("opt");
    let status = swipt(&["optimize", "--protocol", "isaoc", "--surface", "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    assert_eq!(data_rows(&read(&out, "optimize_surface.csv")).len(), 19 * 19);

    let out = swipt(&["dmt", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["figure", "--preset", "fig2", "--trials", "10000", "--seed", "11"];
    let a = swipt(&args).stdout;
    let b = swipt(&args).stdout;
    assert_eq!(a, b);
}
