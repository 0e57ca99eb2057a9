use std::fs;
use std::path::{Path, PathBuf};

use qgk_core::cli::dispatch;

fn qgk(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qgk").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn default_cfg() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/default.cfg")
}

fn small_cfg(dir: &Path, extra: &str) -> PathBuf {
    let path = dir.join("small.cfg");
    let text = format!(
        "grid.n = 16\ngrid.box_length = 6.283185307179586\nmu = 1\ndt = 1e-3\nt_end = 0.02\n\
         ic.kind = random\nic.kmax = 4\nic.norm = 1\nseed = 5\ndiagnostics_every = 2\nsnapshot_every = 10\n{extra}"
    );
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn no_arguments_prints_usage_and_fails() {
    let (code, _, err) = qgk(&[]);
    assert_eq!(code, 1);
    assert!(err.contains("Usage"));
}

#[test]
fn unknown_subcommand_fails() {
    assert_eq!(qgk(&["frobnicate"]).0, 1);
}

#[test]
fn help_and_version_succeed() {
    let (code, out, _) = qgk(&["--version"]);
    assert_eq!(code, 0);
    assert!(out.contains(env!("CARGO_PKG_VERSION")));
    assert_eq!(qgk(&["run", "--help"]).0, 0);
}

#[test]
fn negative_mu_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(
        &cfg,
        "grid.n = 16\ngrid.box_length = 1\nmu = -1\ndt = 1e-3\nt_end = 1\n",
    )
    .unwrap();
    let (code, _, err) = qgk(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().join("o").to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("mu") && err.contains("line 3"), "{err}");
}

#[test]
fn invariants_pass_on_the_shipped_config() {
    let (code, out, err) = qgk(&["invariants", "--config", default_cfg().to_str().unwrap()]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(!out.contains("FAIL"));
    assert!(out.contains("PASS"));
}

#[test]
fn run_is_byte_reproducible_and_self_describing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_cfg(dir.path(), "");
    let mut csvs = Vec::new();
    // same command line twice, so the embedded manifests agree too
    let out = dir.path().join("a");
    for _ in 0..2 {
        let (code, _, err) = qgk(&[
            "run",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.join("final.qgk").exists());
        assert!(out.join("final.qgk.manifest").exists());
        assert!(out.join("snap_00000010.qgk").exists());
        csvs.push(fs::read(out.join("series.csv")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
    let text = String::from_utf8(csvs.pop().unwrap()).unwrap();
    assert!(text.starts_with("# tool: qgk"));
    assert!(text.contains("# seed: 5"));
    assert!(text.lines().any(|l| l.starts_with("t,X,Y,E_first,E_second")));
    let rows = text.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 1 + 11);
}

#[test]
fn linear_and_compare_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_cfg(dir.path(), "");
    let (a, b) = (dir.path().join("nl"), dir.path().join("lin"));
    assert_eq!(
        qgk(&[
            "run",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            a.to_str().unwrap()
        ])
        .0,
        0
    );
    assert_eq!(
        qgk(&[
            "linear",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            b.to_str().unwrap()
        ])
        .0,
        0
    );
    let csv = dir.path().join("cmp.csv");
    let (code, _, err) = qgk(&[
        "compare",
        "--run-a",
        a.to_str().unwrap(),
        "--run-b",
        b.to_str().unwrap(),
        "--eta",
        "0.8",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = fs::read_to_string(csv).unwrap();
    assert!(text.contains("t,h3_difference,envelope_ratio"));
}

#[test]
fn decay_writes_moments_and_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("decay.csv");
    let (code, _, err) = qgk(&[
        "decay",
        "--profile",
        "gaussian:1.0",
        "--mu",
        "1.0",
        "--moments",
        "0,1,3",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let text = fs::read_to_string(csv).unwrap();
    assert!(text.lines().any(|l| l.starts_with("t,M0,M1,M3")));
    assert!(text.contains("summary"));
    let rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('t'))
        .count();
    assert_eq!(rows, 32);
}

#[test]
fn convergence_reports_fourth_order() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_cfg(dir.path(), "forcing.kind = separable_decaying\nforcing.k = 1\nforcing.eta = 0.8\nforcing.g.kind = random\nforcing.g.kmax = 3\n");
    let (code, out, err) = qgk(&[
        "convergence",
        "--config",
        cfg.to_str().unwrap(),
        "--dts",
        "4e-3,2e-3,1e-3",
    ]);
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.contains("order"));
}

#[test]
fn lp_spectrum_of_a_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_cfg(dir.path(), "");
    let run = dir.path().join("r");
    assert_eq!(
        qgk(&[
            "run",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            run.to_str().unwrap()
        ])
        .0,
        0
    );
    let (code, out, err) = qgk(&[
        "lp-spectrum",
        "--input",
        run.join("final.qgk").to_str().unwrap(),
        "--s",
        "1",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(out.lines().count() > 3);
}

#[test]
fn missing_snapshot_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = qgk(&[
        "lp-spectrum",
        "--input",
        dir.path().join("nope.qgk").to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"));
}

#[test]
fn cfl_violation_is_recorded_and_the_run_proceeds() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_cfg(dir.path(), "").to_str().unwrap().to_string();
    let text = fs::read_to_string(&cfg)
        .unwrap()
        .replace("ic.norm = 1", "ic.norm = 3000")
        .replace("t_end = 0.02", "t_end = 0.002");
    fs::write(&cfg, text).unwrap();
    let out = dir.path().join("o");
    let (code, _, err) = qgk(&["run", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let csv = fs::read_to_string(out.join("series.csv")).unwrap();
    assert!(
        csv.lines()
            .any(|l| l.starts_with("# warning:") && l.contains("CFL")),
        "{csv}"
    );
}

#[test]
fn blow_up_exits_with_numerical_status() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_cfg(dir.path(), "");
    let text = fs::read_to_string(&cfg)
        .unwrap()
        .replace("ic.norm = 1", "ic.norm = 1e6")
        .replace("dt = 1e-3", "dt = 1e-2")
        .replace("t_end = 0.02", "t_end = 1");
    fs::write(&cfg, text).unwrap();
    let out = dir.path().join("o");
    let (code, _, err) = qgk(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 2, "{err}");
    assert!(fs::read_dir(&out).unwrap().any(|e| e
        .unwrap()
        .file_name()
        .to_string_lossy()
        .ends_with(".manifest")));
}
