//! C ABI for the verification toolkit.
//!
//! The surface is an opaque report handle plus status codes. A caller
//! supplies the same JSON configuration the CLI accepts (for example
//! `{"family":"so","p":2,"q":2}`), runs the full verification, and then
//! queries the handle or serializes the whole report to JSON. Strings
//! returned as `*mut c_char` are owned by the caller and must be released
//! with `pdgeom_string_free`; reports with `pdgeom_report_free`.
//!
//! Every entry point catches panics and converts them to
//! `PDGEOM_STATUS_PANIC`; the most recent error message is available from
//! `pdgeom_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use pdgeom::error::Error;
use pdgeom::pipeline::{run, RunConfig, Stage};
use pdgeom::report::VerificationReport;

/// Result of every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdgeomStatus {
    /// success
    Ok = 0,
    /// a pointer argument was null or otherwise unusable
    InvalidArgument = 1,
    /// the configuration does not describe a runnable verification
    ConfigError = 2,
    /// the verification machinery failed to build its objects
    VerificationError = 3,
    /// an internal panic was caught at the boundary
    Panic = 4,
}

/// Opaque verification report.
pub struct PdgeomReport {
    inner: VerificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).ok();
    });
}

fn status_for(e: &Error) -> PdgeomStatus {
    match e {
        Error::Config(_)
        | Error::InvalidSpec(_)
        | Error::CentralizerTooLarge { .. }
        | Error::XiZero
        | Error::XiNotInIsotropy(_)
        | Error::Json(_)
        | Error::Io(_) => PdgeomStatus::ConfigError,
        _ => PdgeomStatus::VerificationError,
    }
}

fn parse_config(config_json: &str, seed: u64) -> Result<RunConfig, Error> {
    let file: pdgeom::config::FileConfig = serde_json::from_str(config_json)
        .map_err(|e| Error::Config(format!("config JSON: {e}")))?;
    let spec = pdgeom::config::resolve_spec(&file, None, None, None, None, None)?;
    let mut cfg = RunConfig::new(spec);
    cfg.xi = file.xi.clone();
    cfg.seed = file.seed.unwrap_or(seed);
    Ok(cfg)
}

unsafe fn run_impl(
    config_json: *const c_char,
    seed: u64,
    budget: Option<(usize, usize, usize)>,
    out_report: *mut *mut PdgeomReport,
) -> PdgeomStatus {
    if config_json.is_null() || out_report.is_null() {
        set_last_error("null pointer argument".into());
        return PdgeomStatus::InvalidArgument;
    }
    let config = match CStr::from_ptr(config_json).to_str() {
        Ok(text) => text,
        Err(_) => {
            set_last_error("config JSON is not valid UTF-8".into());
            return PdgeomStatus::InvalidArgument;
        }
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| {
        let mut cfg = parse_config(config, seed)?;
        if let Some((samples, restarts, directions)) = budget {
            cfg.samples = samples.max(100);
            cfg.restarts = restarts.max(1);
            cfg.directions = directions.max(1);
        }
        run(&cfg, Stage::All)
    }));
    match outcome {
        Ok(Ok(output)) => {
            *out_report = Box::into_raw(Box::new(PdgeomReport {
                inner: output.report,
            }));
            PdgeomStatus::Ok
        }
        Ok(Err(e)) => {
            set_last_error(e.to_string());
            status_for(&e)
        }
        Err(_) => {
            set_last_error("panic inside the verification pipeline".into());
            PdgeomStatus::Panic
        }
    }
}

/// Run the full verification described by `config_json` (the CLI's config
/// format) with default statistical budgets. On success `*out_report`
/// receives an owned handle.
///
/// # Safety
/// `config_json` must point to a NUL-terminated string and `out_report`
/// to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pdgeom_report_run(
    config_json: *const c_char,
    seed: u64,
    out_report: *mut *mut PdgeomReport,
) -> PdgeomStatus {
    run_impl(config_json, seed, None, out_report)
}

/// Same as `pdgeom_report_run` with explicit statistical budgets
/// (survey samples, optimizer restarts, radial directions), for callers
/// that want faster, coarser runs.
///
/// # Safety
/// See `pdgeom_report_run`.
#[no_mangle]
pub unsafe extern "C" fn pdgeom_report_run_with_budget(
    config_json: *const c_char,
    seed: u64,
    samples: u64,
    restarts: u64,
    directions: u64,
    out_report: *mut *mut PdgeomReport,
) -> PdgeomStatus {
    run_impl(
        config_json,
        seed,
        Some((samples as usize, restarts as usize, directions as usize)),
        out_report,
    )
}

/// 1 when every check passed, 0 when any failed, -1 on a null handle.
///
/// # Safety
/// `report` must be a live handle from `pdgeom_report_run*` or null.
#[no_mangle]
pub unsafe extern "C" fn pdgeom_report_overall_pass(report: *const PdgeomReport) -> i32 {
    match report.as_ref() {
        Some(r) => {
            if r.inner.overall_pass {
                1
            } else {
                0
            }
        }
        None => -1,
    }
}

/// Total number of recorded checks across all sections; 0 on null.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pdgeom_report_check_count(report: *const PdgeomReport) -> u64 {
    report
        .as_ref()
        .map(|r| r.inner.sections.iter().map(|s| s.checks.len()).sum::<usize>() as u64)
        .unwrap_or(0)
}

/// Number of sections in the report; 0 on null.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pdgeom_report_section_count(report: *const PdgeomReport) -> u64 {
    report.as_ref().map(|r| r.inner.sections.len() as u64).unwrap_or(0)
}

/// The canonical JSON serialization of the report (identical bytes for
/// identical config and seed). Returns null on a null handle; the caller
/// frees the string with `pdgeom_string_free`.
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn pdgeom_report_to_json(report: *const PdgeomReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => match CString::new(r.inner.to_canonical_json()) {
            Ok(s) => s.into_raw(),
            Err(_) => std::ptr::null_mut(),
        },
        None => std::ptr::null_mut(),
    }
}

/// Release a report handle. Null is ignored.
///
/// # Safety
/// `report` must be a handle from `pdgeom_report_run*` that has not been
/// freed already, or null.
#[no_mangle]
pub unsafe extern "C" fn pdgeom_report_free(report: *mut PdgeomReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from a pdgeom function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pdgeom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The most recent error message on this thread, or null when none was
/// recorded. The caller frees it with `pdgeom_string_free`.
#[no_mangle]
pub extern "C" fn pdgeom_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.clone().into_raw())
            .unwrap_or(std::ptr::null_mut())
    })
}

/// Library version as a caller-owned string.
#[no_mangle]
pub extern "C" fn pdgeom_version() -> *mut c_char {
    CString::new(env!("CARGO_PKG_VERSION"))
        .map(CString::into_raw)
        .unwrap_or(std::ptr::null_mut())
}
