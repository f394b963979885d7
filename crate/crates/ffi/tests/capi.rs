//! Exercise the C surface the way a foreign binding would: through the
//! extern functions and raw pointers only.

use std::ffi::{CStr, CString};

use pdgeom_ffi::*;

fn run_config(json: &str, seed: u64) -> (PdgeomStatus, *mut PdgeomReport) {
    let config = CString::new(json).unwrap();
    let mut report: *mut PdgeomReport = std::ptr::null_mut();
    let status = unsafe {
        pdgeom_report_run_with_budget(config.as_ptr(), seed, 2000, 6, 25, &mut report)
    };
    (status, report)
}

#[test]
fn full_run_through_the_c_surface() {
    let (status, report) = run_config(r#"{"family":"so","p":1,"q":2}"#, 7);
    assert_eq!(status, PdgeomStatus::Ok);
    assert!(!report.is_null());
    unsafe {
        assert_eq!(pdgeom_report_overall_pass(report), 1);
        assert_eq!(pdgeom_report_section_count(report), 8);
        assert!(pdgeom_report_check_count(report) >= 40);
        let json = pdgeom_report_to_json(report);
        assert!(!json.is_null());
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["schema"], 1);
        assert_eq!(parsed["algebra"]["label"], "so(1,4)");
        assert_eq!(parsed["overall_pass"], true);
        pdgeom_string_free(json);
        pdgeom_report_free(report);
    }
}

#[test]
fn identical_runs_serialize_identically() {
    let (s1, r1) = run_config(r#"{"family":"sp","m":1,"n":1}"#, 13);
    let (s2, r2) = run_config(r#"{"family":"sp","m":1,"n":1}"#, 13);
    assert_eq!(s1, PdgeomStatus::Ok);
    assert_eq!(s2, PdgeomStatus::Ok);
    unsafe {
        let j1 = pdgeom_report_to_json(r1);
        let j2 = pdgeom_report_to_json(r2);
        assert_eq!(CStr::from_ptr(j1).to_bytes(), CStr::from_ptr(j2).to_bytes());
        pdgeom_string_free(j1);
        pdgeom_string_free(j2);
        pdgeom_report_free(r1);
        pdgeom_report_free(r2);
    }
}

#[test]
fn null_arguments_are_invalid() {
    let mut report: *mut PdgeomReport = std::ptr::null_mut();
    let status = unsafe { pdgeom_report_run(std::ptr::null(), 0, &mut report) };
    assert_eq!(status, PdgeomStatus::InvalidArgument);
    let config = CString::new(r#"{"family":"so","p":1,"q":2}"#).unwrap();
    let status = unsafe { pdgeom_report_run(config.as_ptr(), 0, std::ptr::null_mut()) };
    assert_eq!(status, PdgeomStatus::InvalidArgument);
    unsafe {
        assert_eq!(pdgeom_report_overall_pass(std::ptr::null()), -1);
        assert_eq!(pdgeom_report_check_count(std::ptr::null()), 0);
        assert!(pdgeom_report_to_json(std::ptr::null()).is_null());
        // frees of null are no-ops
        pdgeom_report_free(std::ptr::null_mut());
        pdgeom_string_free(std::ptr::null_mut());
    }
}

#[test]
fn bad_configurations_report_errors() {
    // malformed JSON
    let (status, report) = run_config("{family: so", 0);
    assert_eq!(status, PdgeomStatus::ConfigError);
    assert!(report.is_null());
    let message = pdgeom_last_error_message();
    assert!(!message.is_null());
    unsafe {
        let text = CStr::from_ptr(message).to_str().unwrap();
        assert!(text.contains("config JSON"), "{text}");
        pdgeom_string_free(message);
    }
    // outside the curvature-table hypotheses
    let (status, _) = run_config(r#"{"family":"so","p":1,"q":1}"#, 0);
    assert_eq!(status, PdgeomStatus::ConfigError);
    // unknown family
    let (status, _) = run_config(r#"{"family":"e8"}"#, 0);
    assert_eq!(status, PdgeomStatus::ConfigError);
}

#[test]
fn version_is_exposed() {
    let v = pdgeom_version();
    assert!(!v.is_null());
    unsafe {
        assert_eq!(CStr::from_ptr(v).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
        pdgeom_string_free(v);
    }
}

#[test]
fn header_is_generated_with_the_public_surface() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("pdgeom.h");
    let text = std::fs::read_to_string(&header).expect("cbindgen header");
    for symbol in [
        "pdgeom_report_run",
        "pdgeom_report_run_with_budget",
        "pdgeom_report_overall_pass",
        "pdgeom_report_to_json",
        "pdgeom_report_free",
        "pdgeom_string_free",
        "pdgeom_last_error_message",
        "PdgeomStatus",
        "PdgeomReport",
    ] {
        assert!(text.contains(symbol), "header missing {symbol}");
    }
}
