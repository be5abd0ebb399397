//! C ABI for the torific library.
//!
//! Every call takes and returns JSON documents in the same envelope the
//! command-line tool uses, so the two surfaces stay interchangeable.
//! Results are returned behind an opaque handle that owns the output
//! string; callers read the status, copy what they need, and free the
//! handle with `torific_result_free`.

use std::ffi::{c_char, CStr, CString};

use serde_json::{json, Value};

use torific::graded::{degree_zero_monoid, is_loose, is_taut, torific_ideal};
use torific::io as tio;
use torific::monoid::saturate;
use torific::torify::{quotient_report, torify, TorifyMode};
use torific::TorificError;

/// Status of a completed call. Matches the command-line exit codes for
/// input and domain failures.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TorificStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    DomainError = 3,
}

/// Opaque result handle: owns the output JSON (on success) or the error
/// message (on failure).
pub struct TorificResult {
    status: TorificStatus,
    output: Option<CString>,
    error: Option<CString>,
}

fn boxed(status: TorificStatus, output: Option<String>, error: Option<String>) -> *mut TorificResult {
    let sanitize = |s: String| CString::new(s.replace('\0', " ")).expect("no interior NUL");
    Box::into_raw(Box::new(TorificResult {
        status,
        output: output.map(sanitize),
        error: error.map(sanitize),
    }))
}

enum CallError {
    Input(String),
    Domain(TorificError),
}

impl From<TorificError> for CallError {
    fn from(e: TorificError) -> Self {
        CallError::Domain(e)
    }
}

fn input_err<T>(r: Result<T, TorificError>) -> Result<T, CallError> {
    r.map_err(|e| CallError::Input(e.to_string()))
}

fn mode_of(command: &str) -> TorifyMode {
    if command.ends_with("raw") {
        TorifyMode::Raw
    } else {
        TorifyMode::Balanced
    }
}

fn dispatch(command: &str, input: &Value) -> Result<Value, CallError> {
    match command {
        "hilbert" => {
            let spec = input_err(
                tio::parse_document(input, "spec").and_then(tio::spec_from_value),
            )?;
            let basis = torific::hilbert::hilbert_basis(&spec)?;
            Ok(tio::document("report", json!({ "basis": tio::vecs_to_value(&basis.elements) })))
        }
        "saturate-monoid" => {
            let m = input_err(
                tio::parse_document(input, "monoid").and_then(tio::monoid_from_value),
            )?;
            Ok(tio::document("monoid", tio::monoid_to_value(&saturate(&m)?)))
        }
        "degree-zero" | "taut" | "torific-ideal" => {
            let payload = input_err(tio::parse_document(input, "grading").cloned())?;
            let m = input_err(
                tio::field(&payload, "monoid").and_then(tio::monoid_from_value),
            )?;
            let g = input_err(tio::grading_from_value(&m, &payload))?;
            match command {
                "degree-zero" => {
                    Ok(tio::document("monoid", tio::monoid_to_value(&degree_zero_monoid(&g)?)))
                }
                "taut" => {
                    let report = json!({ "taut": is_taut(&g)?, "loose": is_loose(&g)? });
                    Ok(tio::document("report", report))
                }
                _ => {
                    let s = input_err(
                        tio::field(&payload, "sigma").and_then(tio::multiset_from_value),
                    )?;
                    let i = torific_ideal(&g, &s)?;
                    Ok(tio::document("ideal", tio::ideal_to_value(&i)))
                }
            }
        }
        "torify-balanced" | "torify-raw" | "quotient-balanced" | "quotient-raw" => {
            let payload = input_err(tio::parse_document(input, "model_action").cloned())?;
            let m = input_err(tio::model_action_from_value(&payload))?;
            let report = torify(&m, mode_of(command))?;
            if command.starts_with("quotient") {
                let q = quotient_report(&m, &report)?;
                Ok(tio::document("report", tio::quotient_report_to_value(&q)))
            } else {
                Ok(tio::document("report", tio::torify_report_to_value(&report)))
            }
        }
        "fan-barycentric" => {
            let f = input_err(
                tio::parse_document(input, "fan").and_then(tio::fan_from_value),
            )?;
            let b = torific::fan::barycentric_subdivision(&f)?;
            Ok(tio::document("fan", tio::fan_to_value(&b)))
        }
        "fan-simple" => {
            let a = input_err(
                tio::parse_document(input, "fan_action").and_then(tio::fan_action_from_value),
            )?;
            let simple = torific::fan::is_action_simple(&a)?;
            Ok(tio::document("report", json!({ "simple": simple })))
        }
        other => Err(CallError::Input(format!("unknown command {other:?}"))),
    }
}

/// Runs `command` on the JSON document `input_json` and returns an owned
/// result handle. Never returns null.
///
/// # Safety
/// Both pointers must be valid NUL-terminated C strings (or null, which
/// yields a `NullPointer` status).
#[no_mangle]
pub unsafe extern "C" fn torific_run(
    command: *const c_char,
    input_json: *const c_char,
) -> *mut TorificResult {
    if command.is_null() || input_json.is_null() {
        return boxed(TorificStatus::NullPointer, None, Some("null pointer argument".into()));
    }
    let command = match CStr::from_ptr(command).to_str() {
        Ok(s) => s,
        Err(_) => {
            return boxed(TorificStatus::InvalidInput, None, Some("command is not UTF-8".into()))
        }
    };
    let input = match CStr::from_ptr(input_json).to_str() {
        Ok(s) => s,
        Err(_) => {
            return boxed(TorificStatus::InvalidInput, None, Some("input is not UTF-8".into()))
        }
    };
    let doc: Value = match serde_json::from_str(input) {
        Ok(v) => v,
        Err(e) => {
            return boxed(TorificStatus::InvalidInput, None, Some(format!("invalid JSON: {e}")))
        }
    };
    match dispatch(command, &doc) {
        Ok(v) => boxed(TorificStatus::Ok, Some(v.to_string()), None),
        Err(CallError::Input(msg)) => boxed(TorificStatus::InvalidInput, None, Some(msg)),
        Err(CallError::Domain(e)) => boxed(TorificStatus::DomainError, None, Some(e.to_string())),
    }
}

/// Status of a result handle.
///
/// # Safety
/// `result` must be a handle returned by `torific_run` that has not been
/// freed.
#[no_mangle]
pub unsafe extern "C" fn torific_result_status(result: *const TorificResult) -> TorificStatus {
    if result.is_null() {
        return TorificStatus::NullPointer;
    }
    (*result).status
}

/// Output JSON of a successful call, or null. The string is owned by the
/// handle and freed with it.
///
/// # Safety
/// `result` must be a live handle returned by `torific_run`.
#[no_mangle]
pub unsafe extern "C" fn torific_result_output(result: *const TorificResult) -> *const c_char {
    if result.is_null() {
        return std::ptr::null();
    }
    match &(*result).output {
        Some(s) => s.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Error message of a failed call, or null. The string is owned by the
/// handle and freed with it.
///
/// # Safety
/// `result` must be a live handle returned by `torific_run`.
#[no_mangle]
pub unsafe extern "C" fn torific_result_error(result: *const TorificResult) -> *const c_char {
    if result.is_null() {
        return std::ptr::null();
    }
    match &(*result).error {
        Some(s) => s.as_ptr(),
        None => std::ptr::null(),
    }
}

/// Frees a result handle. Null is accepted and ignored.
///
/// # Safety
/// `result` must be a handle returned by `torific_run`, freed at most
/// once.
#[no_mangle]
pub unsafe extern "C" fn torific_result_free(result: *mut TorificResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Version of the underlying library, as a static string.
#[no_mangle]
pub extern "C" fn torific_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
