use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use qgk_ffi::*;

const CONFIG: &str = "grid.n = 16\ngrid.box_length = 6.283185307179586\nmu = 1\ndt = 0.01\nt_end = 0.1\n\
                      ic.kind = cosine\nic.k1 = 1\nic.k2 = 2\nic.amplitude = 0.5\n";

fn last_error() -> String {
    let mut buf = vec![0 as c_char; 512];
    let n = unsafe { qgk_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(n > 0);
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_string_lossy()
        .into_owned()
}

fn new_run(text: &str) -> *mut QgkRun {
    let c = CString::new(text).unwrap();
    let mut run = ptr::null_mut();
    assert_eq!(
        unsafe { qgk_run_from_config(c.as_ptr(), &mut run) },
        QgkStatus::Ok
    );
    assert!(!run.is_null());
    run
}

#[test]
fn single_mode_run_decays_exactly() {
    let run = new_run(CONFIG);
    let mut e0 = QgkEnergy::default();
    unsafe {
        assert_eq!(qgk_run_energy(run, &mut e0), QgkStatus::Ok);
        let mut taken = 0;
        assert_eq!(qgk_run_advance(run, 1000, &mut taken), QgkStatus::Ok);
        assert_eq!(taken, 10);
        let mut done = 0;
        assert_eq!(qgk_run_is_finished(run, &mut done), QgkStatus::Ok);
        assert_eq!(done, 1);
        let (mut t, mut step) = (0.0, 0);
        assert_eq!(qgk_run_time(run, &mut t, &mut step), QgkStatus::Ok);
        assert_eq!(step, 10);
        assert!((t - 0.1).abs() < 1e-15);
        let mut e1 = QgkEnergy::default();
        assert_eq!(qgk_run_energy(run, &mut e1), QgkStatus::Ok);
        // |ξ|² = 5: energy decays by e^{−2μh t}
        let p: f64 = 5.0;
        let h = (1.0 + p) * p * p / (1.0 + p + p * p);
        let expect = e0.e_first * (-2.0 * h * 0.1).exp();
        assert!((e1.e_first - expect).abs() <= 1e-12 * expect);
        qgk_run_free(run);
    }
}

#[test]
fn field_round_trip_and_samples() {
    let run = new_run(CONFIG);
    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("s.qgk").to_str().unwrap()).unwrap();
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(qgk_run_state(run, &mut f), QgkStatus::Ok);
        assert_eq!(qgk_field_save(f, path.as_ptr(), 0.25), QgkStatus::Ok);
        let mut g = ptr::null_mut();
        let mut t = 0.0;
        assert_eq!(qgk_field_load(path.as_ptr(), &mut g, &mut t), QgkStatus::Ok);
        assert_eq!(t, 0.25);
        let (mut n, mut l) = (0, 0.0);
        assert_eq!(qgk_field_grid(g, &mut n, &mut l), QgkStatus::Ok);
        assert_eq!(n, 16);
        let mut buf = vec![0.0; n * n];
        assert_eq!(
            qgk_field_samples(g, buf.as_mut_ptr(), buf.len() - 1),
            QgkStatus::BufferTooSmall
        );
        assert_eq!(qgk_field_samples(g, buf.as_mut_ptr(), buf.len()), QgkStatus::Ok);
        // 0.5 cos(x + 2y) at the origin and at (dx, 0)
        let dx = l / n as f64;
        assert!((buf[0] - 0.5).abs() < 1e-14);
        assert!((buf[n] - 0.5 * dx.cos()).abs() < 1e-14);
        let mut h0 = 0.0;
        assert_eq!(qgk_field_sobolev_norm(g, 0.0, &mut h0), QgkStatus::Ok);
        assert!((h0 - 0.5 * std::f64::consts::PI * 2f64.sqrt()).abs() < 1e-12);
        qgk_field_free(f);
        qgk_field_free(g);
        qgk_run_free(run);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let bad = CString::new("grid.n = 16\ngrid.box_length = 1\nmu = -1\ndt = 0.1\nt_end = 1\n").unwrap();
    let mut run = std::ptr::dangling_mut::<QgkRun>();
    unsafe {
        assert_eq!(qgk_run_from_config(bad.as_ptr(), &mut run), QgkStatus::Config);
        assert!(run.is_null());
        assert!(last_error().contains("`mu`"));
        assert_eq!(qgk_run_from_config(ptr::null(), &mut run), QgkStatus::NullPointer);
        assert_eq!(
            qgk_run_advance(ptr::null_mut(), 1, ptr::null_mut()),
            QgkStatus::NullPointer
        );
        let missing = CString::new("/nonexistent/x.qgk").unwrap();
        let mut f = ptr::null_mut();
        assert_eq!(
            qgk_field_load(missing.as_ptr(), &mut f, ptr::null_mut()),
            QgkStatus::Io
        );
        let mut m = 0.0;
        assert_eq!(
            qgk_decay_moment_gaussian(-1.0, 0, 1.0, 0.0, &mut m),
            QgkStatus::InvalidArgument
        );
        // truncation keeps the terminator
        let mut small = [1 as c_char; 4];
        let full = qgk_last_error_message(small.as_mut_ptr(), small.len());
        assert!(full > 4);
        assert_eq!(small[3], 0);
        qgk_run_free(ptr::null_mut());
        qgk_field_free(ptr::null_mut());
    }
}

#[test]
fn gaussian_moment_at_zero_time() {
    let mut m = 0.0;
    assert_eq!(
        unsafe { qgk_decay_moment_gaussian(1.0, 0, 1.0, 0.0, &mut m) },
        QgkStatus::Ok
    );
    assert!((m - 2.0 * std::f64::consts::PI).abs() < 1e-9);
    let v = unsafe { CStr::from_ptr(qgk_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "qgk.h"

int main(void) {
    const char *cfg = "grid.n = 16\ngrid.box_length = 6.283185307179586\nmu = 1\n"
                      "dt = 0.01\nt_end = 0.1\nic.kind = cosine\n";
    QgkRun *run = NULL;
    if (qgk_run_from_config(cfg, &run) != QGK_STATUS_OK) return 1;
    size_t taken = 0;
    if (qgk_run_advance(run, 5, &taken) != QGK_STATUS_OK || taken != 5) return 2;
    QgkEnergy e;
    if (qgk_run_energy(run, &e) != QGK_STATUS_OK || !(e.e_first > 0.0)) return 3;
    qgk_run_free(run);
    if (qgk_run_from_config("mu = 1\n", &run) != QGK_STATUS_CONFIG) return 4;
    char msg[256];
    if (qgk_last_error_message(msg, sizeof msg) == 0) return 5;
    printf("%s\n", msg);
    return 0;
}
"#;

fn header_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

#[test]
fn header_compiles_as_c() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("t.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(header_dir())
        .arg(&src)
        .status()
        .expect("a C compiler on PATH");
    assert!(status.success());
}

/// Links the C program against the shared library when cargo has built it
/// next to the test binary.
#[test]
fn c_program_runs_against_shared_library() {
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().and_then(Path::parent).unwrap().to_path_buf();
    let so = lib_dir.join("libqgk_ffi.so");
    if !so.exists() {
        eprintln!("skipping: {} not built", so.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("t.c");
    let bin = dir.path().join("t");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-I"])
        .arg(header_dir())
        .arg(&src)
        .arg("-L")
        .arg(&lib_dir)
        .args(["-lqgk_ffi", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin)
        .env("LD_LIBRARY_PATH", &lib_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).contains("grid.n"));
}
