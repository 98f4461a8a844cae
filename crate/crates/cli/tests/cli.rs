use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn convhelm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_convhelm")).args(args).output().expect("spawn convhelm")
}

fn csv_lines(path: &Path) -> Vec<String> {
    fs::read_to_string(path).unwrap().lines().map(str::to_owned).collect()
}

#[test]
fn quotients_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = convhelm(&[
        "quotients", "--scheme", "p1c,rt2", "--formulation", "convected", "--mach", "0.6",
        "--theta", "0,pi/4", "--out", out, "--svg",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = csv_lines(&dir.path().join("quotients.csv"));
    assert_eq!(lines[0], "scheme,formulation,M,theta,H,q_p,q_g");
    assert!(lines.len() > 10);
    // 17 significant digits: one leading digit and sixteen decimals.
    let q_p = lines[1].split(',').nth(5).unwrap();
    let mantissa = q_p.split('e').next().unwrap().trim_start_matches('-');
    assert_eq!(mantissa.len(), 18, "{q_p}");
    assert!(fs::read_dir(dir.path()).unwrap().any(|e| {
        e.unwrap().path().extension().is_some_and(|x| x == "svg")
    }));
}

#[test]
fn a1_table_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        format!(
            "# small table\nscheme = rt1\nformulation = convected\nmach = 0, 0.3\ntheta = 0\nmach_samples = 0\nout = {}\n",
            dir.path().display()
        ),
    )
    .unwrap();
    let o = convhelm(&["a1-table", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = csv_lines(&dir.path().join("a1_table.csv"));
    assert_eq!(
        lines[0],
        "scheme,formulation,M,theta,A1_closed,A1_numeric,rel_err,extrapolation_residual"
    );
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("RT1NC,convected,"));
}

#[test]
fn fem_errors_small_run() {
    let dir = tempfile::tempdir().unwrap();
    let o = convhelm(&[
        "fem-errors", "--scheme", "rt1", "--mach", "0.3", "--theta", "0", "--omega", "5",
        "--out", dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let lines = csv_lines(&dir.path().join("fem_errors.csv"));
    assert_eq!(lines[0], "scheme,M,theta,omega,n,h,err_energy,wall_time");
    assert_eq!(lines.len(), 2);
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for args in [
        vec!["quotients", "--mach", "1.2", "--out", out],
        vec!["quotients", "--scheme", "q2", "--out", out],
        vec!["fem-errors", "--omega", "80", "--out", out],
        vec!["a1-table", "--config", "/nonexistent/run.cfg"],
    ] {
        let o = convhelm(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "colour = blue\n").unwrap();
    let o = convhelm(&["quotients", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
