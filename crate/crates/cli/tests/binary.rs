//! The `djcm` binary: exit codes, output files and reproducibility.

use std::path::Path;
use std::process::{Command, Output};

use djcm_cli::Scenario;

fn djcm(args: &[&str], env_out_dir: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_djcm"));
    cmd.args(args).env_remove("DJCM_OUT_DIR");
    if let Some(dir) = env_out_dir {
        cmd.env("DJCM_OUT_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn help_and_usage_errors() {
    assert_eq!(code(&djcm(&["--help"], None)), 0);
    assert_eq!(code(&djcm(&["--version"], None)), 0);
    assert_eq!(code(&djcm(&[], None)), 1);
    assert_eq!(code(&djcm(&["frobnicate"], None)), 1);
    assert_eq!(code(&djcm(&["simulate", "--set", "nonsense"], None)), 1);
    let dir = tempfile::tempdir().unwrap();
    let out = djcm(
        &["figure", "fig9", "--out-dir", dir.path().to_str().unwrap()],
        None,
    );
    assert_eq!(code(&out), 1);
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
}

#[test]
fn config_errors() {
    for bad in [
        &["simulate", "--set", "g_a=-1"][..],
        &["simulate", "--set", "colour=blue"],
        &["simulate", "--set", "alpha=3"],
        &["simulate", "--set", "t_end=0"],
        &[
            "compare-measures",
            "--set",
            "omega_a=1.1",
            "--set",
            "omega_b=1.1",
        ],
    ] {
        let out = djcm(bad, None);
        assert_eq!(code(&out), 2, "{bad:?}");
        assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
    }
}

#[test]
fn io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.cfg");
    assert_eq!(
        code(&djcm(
            &["simulate", "--config", missing.to_str().unwrap()],
            None
        )),
        4
    );
    let unwritable = dir.path().join("no/such/dir/out.csv");
    assert_eq!(
        code(&djcm(
            &[
                "simulate",
                "-n",
                "3",
                "--output",
                unwritable.to_str().unwrap()
            ],
            None
        )),
        4
    );
}

#[test]
fn failing_verification_exits_three() {
    let out = djcm(
        &[
            "verify",
            "--param-sets",
            "4",
            "--times",
            "3",
            "--tol-oracle",
            "0",
        ],
        None,
    );
    assert_eq!(code(&out), 3);
    let report = String::from_utf8_lossy(&out.stdout);
    assert!(report.contains("FAIL amplitudes_vs_oracle"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("amplitudes_vs_oracle"));
}

#[test]
fn simulate_config_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# detuned pair\ne_a = 1\nomega_a = 0.9\ne_b = 1.2\nomega_b = 1.3\ng_b = 0.05\n\
         alpha = 0.6\nt_end = 40\nn_samples = 21\noutputs = S_AB,P_A,U_AB,N_AB\n",
    )
    .unwrap();
    let csv = dir.path().join("out.csv");
    let out = djcm(
        &[
            "simulate",
            "-c",
            cfg.to_str().unwrap(),
            "--set",
            "alpha=0.7",
            "-o",
            csv.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "t,S_AB,P_A,U_AB,N_AB");
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 22);

    let echoed = Scenario::from_csv_header(&text).unwrap();
    let mut kv = djcm_cli::KeyValues::parse(&std::fs::read_to_string(&cfg).unwrap()).unwrap();
    kv.apply_overrides(&["alpha=0.7"]).unwrap();
    kv.insert("output", csv.display().to_string());
    assert_eq!(echoed, Scenario::from_key_values(&kv).unwrap());
}

#[test]
fn simulate_to_stdout_is_deterministic() {
    let args = [
        "simulate",
        "--set",
        "omega_a=1.2",
        "--set",
        "omega_b=1.2",
        "-n",
        "50",
    ];
    let (a, b) = (djcm(&args, None), djcm(&args, None));
    assert_eq!(code(&a), 0);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn figure_uses_environment_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = djcm(&["figure", "fig6", "-n", "33"], Some(dir.path()));
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let mut names: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["fig6_w0.5.csv", "fig6_w0.7.csv", "fig6_w1.csv"]);
    for name in names {
        let text = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let mut lines = text.lines().skip_while(|l| l.starts_with('#'));
        assert_eq!(lines.next(), Some("x,t,S_AB,S_ab,S_sum"));
        for line in lines {
            let sum: f64 = line.split(',').nth(4).unwrap().parse().unwrap();
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn flag_overrides_environment_directory() {
    let (env_dir, flag_dir) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let out = djcm(
        &[
            "figure",
            "all",
            "-n",
            "9",
            "--out-dir",
            flag_dir.path().to_str().unwrap(),
        ],
        Some(env_dir.path()),
    );
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_dir(env_dir.path()).unwrap().count(), 0);
    assert_eq!(std::fs::read_dir(flag_dir.path()).unwrap().count(), 8);
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 8);
}

#[test]
fn verify_runs_are_byte_identical() {
    let args = ["verify", "--seed", "7", "--param-sets", "8", "--times", "4"];
    let (a, b) = (djcm(&args, None), djcm(&args, None));
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let other = djcm(
        &["verify", "--seed", "8", "--param-sets", "8", "--times", "4"],
        None,
    );
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn compare_measures_columns() {
    let out = djcm(
        &[
            "compare-measures",
            "--set",
            "t_end=15.707963267948966",
            "-n",
            "5",
        ],
        None,
    );
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines().skip_while(|l| l.starts_with('#'));
    assert_eq!(lines.next(), Some("t,gt,U_AB,S_AB,N_closed,N_oracle"));
    assert_eq!(lines.count(), 5);
}
