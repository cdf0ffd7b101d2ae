use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use uavsec_cli::sweep::CSV_HEADER;
use uavsec_cli::{parse_config_str, run_sweep, SweepSpec};
use uavsec_core::{Bound, SopMethod};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_uavsec"))
}

struct TempFile(PathBuf);

impl TempFile {
    fn new(tag: &str, contents: &str) -> Self {
        let p = std::env::temp_dir().join(format!("uavsec-cli-{}-{tag}", std::process::id()));
        std::fs::write(&p, contents).unwrap();
        TempFile(p)
    }

    fn path(&self) -> &Path {
        &self.0
    }
}

impl Drop for TempFile {
    fn drop(&mut self) {
        let _ = std::fs::remove_file(&self.0);
    }
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn sop_column(csv: &str) -> Vec<f64> {
    csv.lines().skip(1).map(|l| l.split(',').nth(5).unwrap().parse().unwrap()).collect()
}

#[test]
fn config_errors_exit_with_usage_code() {
    let bad = TempFile::new("bad.cfg", "n = 2\nheight_h = 25\nr_s = 20\n");
    let o = run(bin().args(["sop", "downlink", "--config"]).arg(bad.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("height_h <= r_s"), "{}", stderr(&o));

    let typo = TempFile::new("typo.cfg", "# comment\ng_mian = 2\n");
    let o = run(bin().args(["sop", "uplink", "--config"]).arg(typo.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let o = run(bin().args(["sop", "uplink", "--config", "/nonexistent/uavsec.cfg"]));
    assert_eq!(o.status.code(), Some(2));

    let o = run(bin().args(["sop", "sideways"]));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sop_prints_requested_methods() {
    let cfg = TempFile::new("sop.cfg", "chord_l = 20\n");
    let o = run(bin().args(["sop", "uplink", "--method", "both", "--config"]).arg(cfg.path()));
    assert!(o.status.success(), "{}", stderr(&o));
    let out = String::from_utf8(o.stdout).unwrap();
    let quad: f64 = out
        .lines()
        .find(|l| l.contains("quadrature"))
        .and_then(|l| l.split_whitespace().nth(2))
        .unwrap()
        .parse()
        .unwrap();
    assert!((quad - 0.598_319_444_460_568_5).abs() < 1e-9, "{out}");
    assert!(out.contains("monte_carlo"));

    let o = run(bin().args(["sop", "uplink", "--method", "closed", "--config"]).arg(cfg.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("closed form"));
}

#[test]
fn validate_specfun_passes() {
    let o = run(bin().args(["validate", "--suite", "specfun"]));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("meijer G = erf") && out.contains("0 failed"));
}

#[test]
fn sweep_csv_schema_and_trend() {
    let cfg = TempFile::new("trend.cfg", "");
    let o = run(bin()
        .args(["sweep", "--var", "g_main", "--grid", "0.5,1,2,4", "--config"])
        .arg(cfg.path()));
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = String::from_utf8(o.stdout).unwrap();
    assert_eq!(csv.lines().next().unwrap(), CSV_HEADER.join(","));
    assert!(!csv.contains('\r'));
    let sop = sop_column(&csv);
    assert_eq!(sop.len(), 4);
    assert!(sop.windows(2).all(|w| w[1] < w[0]), "{sop:?}");
    // 17 significant digits.
    let first = csv.lines().nth(1).unwrap().split(',').nth(5).unwrap();
    assert_eq!(first.split('e').next().unwrap().replace('.', "").len(), 17);
}

#[test]
fn sweep_over_transmit_snr_is_flat() {
    let cfg = TempFile::new("flat.cfg", "link = downlink\n");
    let out = TempFile::new("flat.csv", "");
    let o = run(bin()
        .args(["sweep", "--var", "lambda_db", "--grid", "-5,0,5", "--bound", "lower", "--config"])
        .arg(cfg.path())
        .arg("--out")
        .arg(out.path()));
    assert!(o.status.success(), "{}", stderr(&o));
    let sop = sop_column(&std::fs::read_to_string(out.path()).unwrap());
    let spread = sop.iter().map(|v| (v - sop[0]).abs()).fold(0.0, f64::max);
    assert!(spread <= 1e-8, "{sop:?}");
}

#[test]
fn sweep_rejects_bad_grids() {
    let cfg = TempFile::new("grid.cfg", "");
    for (var, grid) in [("g_main", "1,1"), ("g_main", "2,1"), ("g_main", "1,x"), ("seed", "1,2"), ("bogus", "1")] {
        let o = run(bin().args(["sweep", "--var", var, "--grid", grid, "--config"]).arg(cfg.path()));
        assert_eq!(o.status.code(), Some(2), "{var} {grid}");
    }
}

#[test]
fn failed_cells_keep_the_run_going() {
    let cfg = TempFile::new("cells.cfg", "link = downlink\nr_s = 20\n");
    let o = run(bin()
        .args(["sweep", "--var", "height_h", "--grid", "10,25", "--config"])
        .arg(cfg.path()));
    assert!(o.status.success());
    let csv = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(!rows[0].split(',').nth(5).unwrap().is_empty());
    let bad: Vec<&str> = rows[1].split(',').collect();
    assert!(bad[5].is_empty() && bad[6].is_empty());
    assert!(bad.last().unwrap().contains("height_h <= r_s"));
}

#[test]
fn ties_and_series() {
    let base = parse_config_str("link = downlink\n").unwrap();
    let mut spec = SweepSpec::new(base, "r_s", vec![20.0, 1000.0, 3000.0]);
    spec.ties.push("height_h*0.5".parse().unwrap());
    spec.series = Some("g_eve=0.6,1.6".parse().unwrap());
    spec.bounds = vec![Bound::Lower];
    spec.methods = vec![SopMethod::Quadrature];
    let rows = run_sweep(&spec).unwrap();
    assert_eq!(rows.len(), 6);
    for r in &rows {
        assert_eq!(r.params.height_h, 0.5 * r.params.r_s);
    }
    let low: Vec<f64> = rows[..3].iter().map(|r| r.sop.unwrap()).collect();
    let high: Vec<f64> = rows[3..].iter().map(|r| r.sop.unwrap()).collect();
    assert!(low.iter().all(|v| (v - low[0]).abs() < 1e-8), "{low:?}");
    assert!(high.iter().zip(&low).all(|(h, l)| h > l));
}

#[test]
fn gnuplot_blocks() {
    let cfg = TempFile::new("gp.cfg", "");
    let o = run(bin()
        .args(["sweep", "--var", "g_main", "--grid", "1,2", "--series", "g_eve=0.6,1.6", "--gnuplot", "--config"])
        .arg(cfg.path()));
    assert!(o.status.success(), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.split("\n\n\n").count(), 2, "{text}");
    assert_eq!(text.lines().filter(|l| !l.is_empty() && !l.starts_with('#')).count(), 4);
    assert!(text.contains("g_eve=5.9999999999999998e-1"));
}

#[test]
fn sweep_is_reproducible() {
    let cfg = TempFile::new("repro.cfg", "mc_samples = 5000\nseed = 3\n");
    let go = |threads: &str| {
        let o = run(bin()
            .args(["sweep", "--var", "g_eve", "--grid", "0.6,1.1", "--method", "both", "--threads", threads, "--config"])
            .arg(cfg.path()));
        assert!(o.status.success(), "{}", stderr(&o));
        o.stdout
    };
    let a = go("1");
    assert_eq!(a, go("1"));
    assert_eq!(a, go("3"));
}
