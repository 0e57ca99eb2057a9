//! C interface to `qgk-core`.
//!
//! Objects are opaque handles created by `qgk_*_new`/`qgk_*_load`-style
//! functions and released with the matching `*_free`. Every function returns
//! a [`QgkStatus`]; on failure a message is kept per thread and can be read
//! with [`qgk_last_error_message`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use qgk_core::cli::parse_config_str;
use qgk_core::decay::{moment_integral, RadialProfile};
use qgk_core::diagnostics::EnergyReport;
use qgk_core::evolution::Simulation;
use qgk_core::spectral::{inverse_transform, snapshot, sobolev_norm, SpectralField};
use qgk_core::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QgkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    GridMismatch = 3,
    Config = 4,
    Io = 5,
    Snapshot = 6,
    NonFinite = 7,
    NumericalAbort = 8,
    Quadrature = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

/// A run in progress.
pub struct QgkRun {
    sim: Simulation,
}

/// A real field in spectral storage.
pub struct QgkField {
    field: SpectralField,
}

/// Energy diagnostics of one state.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QgkEnergy {
    pub e_first: f64,
    pub e_second: f64,
    pub x: f64,
    pub y: f64,
    pub h3: f64,
    pub h4: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QgkStatus {
    match e {
        Error::GridMismatch(_) => QgkStatus::GridMismatch,
        Error::NonFinite(_) => QgkStatus::NonFinite,
        Error::InvalidArgument(_) => QgkStatus::InvalidArgument,
        Error::Snapshot(_) => QgkStatus::Snapshot,
        Error::Config { .. } => QgkStatus::Config,
        Error::Quadrature { .. } => QgkStatus::Quadrature,
        Error::NumericalAbort { .. } => QgkStatus::NumericalAbort,
        Error::Io(_) => QgkStatus::Io,
    }
}

struct Fail(QgkStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(QgkStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any failure or panic.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QgkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QgkStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            QgkStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(QgkStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qgk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buf` (truncated and
/// always NUL-terminated when `len > 0`). Returns the full message length
/// plus one, or 0 when there is no message.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn qgk_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else {
            return 0;
        };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = (bytes.len() - 1).min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Builds a run from config text. Relative paths in the text resolve
/// against the current directory.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qgk_run_from_config(text: *const c_char, out: *mut *mut QgkRun) -> QgkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let text = str_arg(text, "text")?;
        let parsed = parse_config_str(text, Path::new("."))?;
        let sim = Simulation::new(parsed.config)?;
        *out = Box::into_raw(Box::new(QgkRun { sim }));
        Ok(())
    })
}

/// Releases a run; null is ignored.
///
/// # Safety
/// `run` must come from [`qgk_run_from_config`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qgk_run_free(run: *mut QgkRun) {
    if !run.is_null() {
        drop(Box::from_raw(run));
    }
}

/// Advances at most `steps` steps, stopping at the configured end time.
/// Writes the number taken to `taken` when it is not null. After a
/// numerical abort the run keeps its last finite state.
///
/// # Safety
/// `run` must be a live handle; `taken` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qgk_run_advance(run: *mut QgkRun, steps: usize, taken: *mut usize) -> QgkStatus {
    guard(|| {
        let run = out_arg(run, "run")?;
        let mut n = 0;
        let result = (|| {
            while n < steps && !run.sim.is_finished() {
                run.sim.advance()?;
                n += 1;
            }
            Ok::<(), Error>(())
        })();
        if let Some(t) = taken.as_mut() {
            *t = n;
        }
        result.map_err(Fail::from)
    })
}

/// Current time and step index.
///
/// # Safety
/// `run` must be a live handle; outputs null or writable.
#[no_mangle]
pub unsafe extern "C" fn qgk_run_time(run: *const QgkRun, time: *mut f64, step: *mut usize) -> QgkStatus {
    guard(|| {
        let run = ref_arg(run, "run")?;
        if let Some(t) = time.as_mut() {
            *t = run.sim.time();
        }
        if let Some(s) = step.as_mut() {
            *s = run.sim.step_index();
        }
        Ok(())
    })
}

/// Writes 1 to `finished` once the end time is reached, else 0.
///
/// # Safety
/// `run` must be a live handle; `finished` writable.
#[no_mangle]
pub unsafe extern "C" fn qgk_run_is_finished(run: *const QgkRun, finished: *mut i32) -> QgkStatus {
    guard(|| {
        let run = ref_arg(run, "run")?;
        *out_arg(finished, "finished")? = run.sim.is_finished() as i32;
        Ok(())
    })
}

/// Energy diagnostics of the current state.
///
/// # Safety
/// `run` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qgk_run_energy(run: *const QgkRun, out: *mut QgkEnergy) -> QgkStatus {
    guard(|| {
        let run = ref_arg(run, "run")?;
        let out = out_arg(out, "out")?;
        let e = EnergyReport::new(run.sim.state(), &[], &[])?;
        *out = QgkEnergy {
            e_first: e.e_first,
            e_second: e.e_second,
            x: e.x,
            y: e.y,
            h3: e.h3,
            h4: e.h4,
        };
        Ok(())
    })
}

/// Copies the current state into a new field handle.
///
/// # Safety
/// `run` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qgk_run_state(run: *const QgkRun, out: *mut *mut QgkField) -> QgkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let run = ref_arg(run, "run")?;
        *out = Box::into_raw(Box::new(QgkField {
            field: run.sim.state().clone(),
        }));
        Ok(())
    })
}

/// Reads a snapshot file; its time goes to `time` when not null.
///
/// # Safety
/// `path` must be NUL-terminated; `out` writable; `time` null or writable.
#[no_mangle]
pub unsafe extern "C" fn qgk_field_load(
    path: *const c_char,
    out: *mut *mut QgkField,
    time: *mut f64,
) -> QgkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let path = str_arg(path, "path")?;
        let (field, t) = snapshot::load(path)?;
        if let Some(tp) = time.as_mut() {
            *tp = t;
        }
        *out = Box::into_raw(Box::new(QgkField { field }));
        Ok(())
    })
}

/// Writes a snapshot file stamped with `time`.
///
/// # Safety
/// `field` must be a live handle; `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qgk_field_save(field: *const QgkField, path: *const c_char, time: f64) -> QgkStatus {
    guard(|| {
        let field = ref_arg(field, "field")?;
        let path = str_arg(path, "path")?;
        snapshot::save(path, &field.field, time)?;
        Ok(())
    })
}

/// Releases a field; null is ignored.
///
/// # Safety
/// `field` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qgk_field_free(field: *mut QgkField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Grid size `n` and box side `L` of a field.
///
/// # Safety
/// `field` must be a live handle; outputs null or writable.
#[no_mangle]
pub unsafe extern "C" fn qgk_field_grid(
    field: *const QgkField,
    n: *mut usize,
    box_length: *mut f64,
) -> QgkStatus {
    guard(|| {
        let g = *ref_arg(field, "field")?.field.grid();
        if let Some(p) = n.as_mut() {
            *p = g.n();
        }
        if let Some(p) = box_length.as_mut() {
            *p = g.box_length();
        }
        Ok(())
    })
}

/// Physical samples in row-major order; `len` must be at least `n²`.
///
/// # Safety
/// `field` must be a live handle; `out` valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn qgk_field_samples(field: *const QgkField, out: *mut f64, len: usize) -> QgkStatus {
    guard(|| {
        let field = &ref_arg(field, "field")?.field;
        if out.is_null() {
            return Err(null("out"));
        }
        let need = field.grid().len();
        if len < need {
            return Err(Fail(
                QgkStatus::BufferTooSmall,
                format!("buffer holds {len} values, need {need}"),
            ));
        }
        let samples = inverse_transform(field);
        ptr::copy_nonoverlapping(samples.samples().as_ptr(), out, need);
        Ok(())
    })
}

/// `‖u‖_{H^s}`.
///
/// # Safety
/// `field` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qgk_field_sobolev_norm(field: *const QgkField, s: f64, out: *mut f64) -> QgkStatus {
    guard(|| {
        let field = ref_arg(field, "field")?;
        if !s.is_finite() {
            return Err(Fail(QgkStatus::InvalidArgument, format!("s = {s}")));
        }
        *out_arg(out, "out")? = sobolev_norm(&field.field, s);
        Ok(())
    })
}

/// Whole-plane decay moment `M_k(t)` of a Gaussian radial profile.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qgk_decay_moment_gaussian(
    width: f64,
    k: u32,
    mu: f64,
    t: f64,
    out: *mut f64,
) -> QgkStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let profile = RadialProfile::gaussian(width)?;
        *out = moment_integral(&profile, k, mu, t)?;
        Ok(())
    })
}
